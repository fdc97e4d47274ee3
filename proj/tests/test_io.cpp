#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "generators.hpp"
#include "rotowave/io.hpp"

using namespace rotowave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rotowave_io_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(NumberFormat, RoundTripsBinary64) {
  rotowave::testing::Gen gen(601);
  for (int n = 0; n < 10000; ++n) {
    const double x = std::ldexp(gen.uniform(-1, 1), gen.integer(-300, 300));
    const auto back = io::parse_number(io::format_number(x));
    ASSERT_TRUE(back);
    ASSERT_EQ(*back, x) << io::format_number(x);
  }
}

TEST(NumberFormat, FixedSeventeenDigits) {
  EXPECT_EQ(io::format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_number(5.0), "5");
  EXPECT_EQ(io::format_number(-0.0), "0");
  EXPECT_EQ(io::format_number(1e-20), "9.9999999999999995e-21");
}

TEST(NumberFormat, MissingToken) {
  EXPECT_EQ(io::format_number(std::numeric_limits<double>::infinity()), "NA");
  EXPECT_EQ(io::format_number(std::nan("")), "NA");
  EXPECT_EQ(io::format_number(std::optional<double>{}), "NA");
  EXPECT_FALSE(io::parse_number("NA"));
  EXPECT_THROW(io::parse_number("1.5x"), std::invalid_argument);
}

TEST(Csv, RowsAreCommaSeparatedWithLf) {
  std::ostringstream out;
  io::write_csv_row(out, {"a", "1", "NA"});
  EXPECT_EQ(out.str(), "a,1,NA\n");
}

TEST(Csv, ProbeAndEnergyFiles) {
  std::vector<ProbeSample> probe = {{0.0, FieldVector<double>(1, 2, 3, 4)}, {0.5, FieldVector<double>(-1, 0.25, 0, 1e-3)}};
  std::vector<EnergySample> energy = {{0.0, 1.5}, {0.5, 1.4999999999999998}};
  io::write_probe_csv(scratch("probe.csv"), probe);
  io::write_energy_csv(scratch("energy.csv"), energy);

  const auto p = io::read_csv(scratch("probe.csv"));
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], (std::vector<std::string>{"t", "v1", "v2", "v3", "p"}));
  EXPECT_EQ(*io::parse_number(p[2][4]), 1e-3);
  const auto e = io::read_csv(scratch("energy.csv"));
  ASSERT_EQ(e.size(), 3u);
  EXPECT_EQ(*io::parse_number(e[2][1]), 1.4999999999999998);
}

TEST(Snapshots, RoundTrip) {
  const Grid g{8, 16, 1.25, 2.5};
  rotowave::testing::Gen gen(602);
  std::vector<FieldState> snaps;
  for (int n = 0; n < 3; ++n) {
    FieldState s = FieldState::zeros(g, 0.1 * n);
    for (Field f : {Field::v1, Field::v2, Field::v3, Field::p})
      for (Eigen::Index i = 0; i < s.field(f).size(); ++i) s.field(f)(i) = gen.uniform(-1, 1);
    snaps.push_back(std::move(s));
  }
  io::write_snapshots(scratch("snap.bin"), g, snaps);
  EXPECT_EQ(fs::file_size(scratch("snap.bin")), 8 + 4 * 4 + 8 + 2 * 8 + 16 + 3 * (8 + 4 * 8 * 16 * 8));

  const auto file = io::read_snapshots(scratch("snap.bin"));
  EXPECT_EQ(file.grid, g);
  ASSERT_EQ(file.snapshots.size(), 3u);
  for (int n = 0; n < 3; ++n) {
    EXPECT_EQ(file.snapshots[n].t, snaps[n].t);
    for (Field f : {Field::v1, Field::v2, Field::v3, Field::p})
      EXPECT_TRUE((file.snapshots[n].field(f) == snaps[n].field(f)).all());
  }
}

TEST(Snapshots, LayoutIsX1Fastest) {
  const Grid g{8, 8};
  FieldState s = FieldState::zeros(g, 2.0);
  s.v1(1, 0) = 7.0;  // offset 1
  s.v1(0, 1) = 9.0;  // offset n1
  io::write_snapshots(scratch("layout.bin"), g, {s});
  std::ifstream in(scratch("layout.bin"), std::ios::binary);
  in.seekg(8 + 4 * 4 + 8 + 2 * 8 + 16);
  double buf[10];
  in.read(reinterpret_cast<char*>(buf), sizeof(buf));
  EXPECT_EQ(buf[0], 2.0);
  EXPECT_EQ(buf[1 + 1], 7.0);
  EXPECT_EQ(buf[1 + 8], 9.0);
}

TEST(Snapshots, RejectsForeignFiles) {
  std::ofstream(scratch("junk.bin")) << "not a snapshot";
  EXPECT_THROW(io::read_snapshots(scratch("junk.bin")), std::runtime_error);
}

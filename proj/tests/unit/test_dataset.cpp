// SPDX-FileCopyrightText: (c) 2026 The mlgaze authors
//
// SPDX-License-Identifier: Apache-2.0

#include "mlgaze/dataset.hpp"
#include "mlgaze/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace mlgaze;

namespace {

const char *kHeader = "# participant_id=P07\n"
                      "# platform=desktop\n"
                      "# condition=UD70\n"
                      "# user_distance_mm=700\n"
                      "# screen_width_px=1680\n"
                      "# screen_height_px=1050\n"
                      "# screen_diagonal_mm=558.8\n"
                      "timestamp_ms,left_x,left_y,right_x,right_y,aoi_id,gt_x,gt_y\n";

std::string rows(const std::string &body) { return kHeader + body; }

GazeRecord record(std::int64_t t, int aoi, std::optional<double> lx,
                  double ly = 10.0) {
  GazeRecord r;
  r.timestamp_ms = t;
  r.aoi_id = aoi;
  r.left_x = lx;
  r.left_y = ly;
  r.right_x = 20.0;
  r.right_y = 20.0;
  return r;
}

GazeSession session_of(std::vector<GazeRecord> recs) {
  GazeSession s;
  s.screen = ScreenConfig::desktop();
  s.aoi_grid = make_aoi_grid(s.screen);
  s.records = std::move(recs);
  return s;
}

} // namespace

TEST(ScreenConfig, PitchFromDiagonal) {
  const auto s = ScreenConfig::from_diagonal(1680, 1050, 558.8);
  EXPECT_NEAR(s.pixel_pitch_mm, 558.8 / std::hypot(1680.0, 1050.0), 1e-9);
  EXPECT_EQ(s.origin, (Point{840.0, 525.0}));
  const auto t = ScreenConfig::tablet();
  EXPECT_GT(t.pixel_pitch_mm, 0.0);
  EXPECT_EQ(t.width_px, 1920);
  EXPECT_EQ(t.height_px, 800);
}

TEST(ScreenConfig, RejectsNonPositive) {
  ScreenConfig s;
  EXPECT_THROW(s.validate(), UsageError);
}

TEST(AoiGrid, ColumnSpacingAndCenter) {
  const auto s = ScreenConfig::desktop();
  const auto g = make_aoi_grid(s, 0.1);
  ASSERT_EQ(g.size(), 15u);
  EXPECT_NEAR(g[1].x - g[0].x, 336.0, 1e-9);
  EXPECT_EQ(g[7], s.center());
}

TEST(AoiGrid, ZeroMarginCornersClampToPixels) {
  const auto s = ScreenConfig::desktop();
  const auto g = make_aoi_grid(s, 0.0);
  EXPECT_EQ(g[0], (Point{0.0, 0.0}));
  EXPECT_EQ(g[14], (Point{1679.0, 1049.0}));
}

TEST(AoiGrid, MirrorSymmetry) {
  for (const auto &s : {ScreenConfig::desktop(), ScreenConfig::tablet()}) {
    const auto g = make_aoi_grid(s, 0.1);
    for (int a = 1; a <= kAoiCount; ++a) {
      const auto &p = g[static_cast<std::size_t>(a - 1)];
      const auto &h = g[static_cast<std::size_t>(aoi_after_hflip(a) - 1)];
      const auto &v = g[static_cast<std::size_t>(aoi_after_vflip(a) - 1)];
      EXPECT_NEAR(p.x, h.x, 1e-9);
      EXPECT_NEAR(p.y + h.y, s.height_px, 1e-9);
      EXPECT_NEAR(p.y, v.y, 1e-9);
      EXPECT_NEAR(p.x + v.x, s.width_px, 1e-9);
    }
  }
}

TEST(AoiGrid, RejectsBadMargin) {
  EXPECT_THROW(make_aoi_grid(ScreenConfig::desktop(), 0.5), UsageError);
  EXPECT_THROW(make_aoi_grid(ScreenConfig::desktop(), -0.1), UsageError);
}

TEST(AoiFlip, Permutations) {
  EXPECT_EQ(aoi_after_hflip(1), 11);
  EXPECT_EQ(aoi_after_hflip(7), 7);
  EXPECT_EQ(aoi_after_vflip(1), 5);
  EXPECT_EQ(aoi_after_vflip(11), 15);
  EXPECT_EQ(aoi_after_vflip(8), 8);
  for (int a = 1; a <= kAoiCount; ++a) {
    EXPECT_EQ(aoi_after_hflip(aoi_after_hflip(a)), a);
    EXPECT_EQ(aoi_after_vflip(aoi_after_vflip(a)), a);
  }
}

TEST(Condition, ParseNames) {
  EXPECT_EQ(parse_condition("head_roll20"), Condition::HeadRoll20);
  EXPECT_EQ(parse_condition("HeadRoll20"), Condition::HeadRoll20);
  EXPECT_EQ(parse_condition("ud60"), Condition::UD60);
  EXPECT_FALSE(parse_condition("UD90"));
  for (auto c : kAllConditions) {
    EXPECT_EQ(parse_condition(to_string(c)), c);
    const double z = nominal_distance_mm(c);
    EXPECT_GE(z, 500.0);
    EXPECT_LE(z, 800.0);
  }
  EXPECT_EQ(parse_platform("Tablet"), Platform::tablet);
}

TEST(LoadSession, TwoRows) {
  const auto s = parse_session(rows("0,100,200,110,210,1,168,105\n"
                                    "33,101,201,111,211,1,168,105\n"));
  ASSERT_EQ(s.records.size(), 2u);
  EXPECT_EQ(s.aoi_grid.size(), 15u);
  EXPECT_EQ(s.meta.participant_id, "P07");
  EXPECT_EQ(s.meta.condition, Condition::UD70);
  EXPECT_DOUBLE_EQ(s.meta.user_distance_mm, 700.0);
  EXPECT_EQ(*s.records[1].left_x, 101.0);
}

TEST(LoadSession, MissingValuesPassThrough) {
  std::string body;
  for (int i = 0; i < 8; ++i) {
    const bool gap = i == 6;
    body += std::to_string(i * 33) + "," + (gap ? "NaN" : "100") +
            ",200,110," + (i == 3 ? "" : "210") + ",1,168,105\n";
  }
  const auto s = parse_session(rows(body));
  EXPECT_FALSE(s.records[6].left_x);
  EXPECT_TRUE(s.records[6].left_y);
  EXPECT_FALSE(s.records[3].right_y);
  EXPECT_FALSE(s.records[6].complete());
}

TEST(LoadSession, UnknownAoiNamesRow) {
  try {
    parse_session(rows("0,1,1,1,1,1,168,105\n33,1,1,1,1,16,168,105\n"));
    FAIL() << "expected DataError";
  } catch (const DataError &e) {
    EXPECT_NE(std::string(e.what()).find("row 2"), std::string::npos)
        << e.what();
  }
}

TEST(LoadSession, RejectsDecreasingTimestamps) {
  EXPECT_THROW(parse_session(rows("33,1,1,1,1,1,168,105\n0,1,1,1,1,1,168,105\n")),
               DataError);
}

TEST(LoadSession, RejectsMalformedRow) {
  EXPECT_THROW(parse_session(rows("0,abc,1,1,1,1,168,105\n")), DataError);
  EXPECT_THROW(parse_session(rows("0,1,1,1,1\n")), DataError);
}

TEST(LoadSession, RoundTripIsByteIdentical) {
  const std::string text = rows("0,100.5,200,110,210,1,168,105\n"
                                "33,,201,NaN,211,2,504,105\n"
                                "66,102,202,112,212,2,504,105\n");
  const auto s = parse_session(text);
  const auto again = format_session(s);
  EXPECT_EQ(format_session(parse_session(again)), again);
  EXPECT_EQ(parse_session(again).records, s.records);

  const auto dir = std::filesystem::temp_directory_path() / "mlgaze_dataset";
  std::filesystem::create_directories(dir);
  save_session(s, dir / "s.csv");
  const auto loaded = load_session(dir / "s.csv");
  EXPECT_EQ(loaded.records, s.records);
  EXPECT_EQ(loaded.meta.condition, s.meta.condition);
}

TEST(LoadSession, OverrideMeta) {
  const auto dir = std::filesystem::temp_directory_path() / "mlgaze_dataset";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "o.csv");
    out << rows("0,100,200,110,210,1,168,105\n");
  }
  SessionMeta meta;
  meta.participant_id = "X";
  meta.condition = Condition::HeadYaw20;
  meta.user_distance_mm = 600;
  const auto s = load_session(dir / "o.csv", ScreenConfig::tablet(), meta);
  EXPECT_EQ(s.meta.participant_id, "X");
  EXPECT_EQ(s.screen.width_px, 1920);
}

TEST(LoadSession, MissingFile) {
  EXPECT_THROW(load_session("/nonexistent/none.csv"), DataError);
}

TEST(FillMissing, SegmentMean) {
  const auto s = session_of({record(0, 3, 100.0), record(33, 3, std::nullopt),
                             record(66, 3, 104.0)});
  const auto f = fill_missing(s);
  EXPECT_DOUBLE_EQ(*f.records[1].left_x, 102.0);
  EXPECT_FALSE(s.records[1].left_x) << "input must stay untouched";
}

TEST(FillMissing, IdentityWithoutGaps) {
  const auto s = session_of({record(0, 1, 5.0), record(33, 2, 7.0)});
  EXPECT_EQ(fill_missing(s).records, s.records);
}

TEST(FillMissing, SessionFallback) {
  const auto s = session_of({record(0, 1, 500.0), record(33, 1, 524.0),
                             record(66, 3, std::nullopt),
                             record(99, 3, std::nullopt)});
  const auto f = fill_missing(s);
  EXPECT_DOUBLE_EQ(*f.records[2].left_x, 512.0);
  EXPECT_DOUBLE_EQ(*f.records[3].left_x, 512.0);
}

TEST(FillMissing, Idempotent) {
  const auto s = session_of({record(0, 1, 1.0), record(33, 1, std::nullopt),
                             record(66, 2, std::nullopt), record(99, 2, 9.0),
                             record(132, 4, std::nullopt)});
  const auto once = fill_missing(s);
  EXPECT_EQ(fill_missing(once).records, once.records);
}

TEST(FillMissing, WholeChannelMissing) {
  const auto s = session_of({record(0, 1, std::nullopt), record(33, 2, std::nullopt)});
  EXPECT_THROW(fill_missing(s), DataError);
}

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracle.hpp"
#include "rankfilt/image.hpp"

using namespace rankfilt;

namespace {

GrayImage tens_plus_ones() {
  GrayImage img(5, 5);
  for (int y = 0; y < 5; ++y)
    for (int x = 0; x < 5; ++x) img.at(x, y) = static_cast<Intensity>(10 * x + y);
  return img;
}

std::vector<int> sorted_values(const Window& w) {
  std::vector<int> v(w.values().begin(), w.values().end());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST(NewImage, FillsEveryPixel) {
  const GrayImage img = new_image(4, 4, 0);
  EXPECT_EQ(img.size(), 16u);
  EXPECT_TRUE(std::all_of(img.pixels().begin(), img.pixels().end(), [](Intensity p) { return p == 0; }));

  const GrayImage one = new_image(1, 1, 255);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.at(0, 0), 255);
}

TEST(NewImage, RejectsZeroDimension) {
  try {
    new_image(0, 5, 7);
    FAIL() << "expected invalid-dimension";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_dimension);
  }
  EXPECT_THROW(new_image(5, 0, 7), Error);
  EXPECT_THROW(new_image(2, 2, 256), Error);
}

TEST(GrayImage, RejectsPixelCountMismatch) {
  EXPECT_THROW(GrayImage(2, 2, std::vector<Intensity>(3)), Error);
}

TEST(WindowAt, ConstantImage) {
  const Window w = window_at(new_image(7, 7, 100), 3, 3, 3);
  EXPECT_EQ(w.values().size(), 9u);
  EXPECT_TRUE(std::all_of(w.values().begin(), w.values().end(), [](Intensity p) { return p == 100; }));
  EXPECT_EQ(w.center_value(), 100);
}

TEST(WindowAt, CornerReplicatesFourTimes) {
  const GrayImage img = oracle::random_image(6, 6, 3);
  const Window w = window_at(img, 0, 0, 3, BorderPolicy::replicate);
  // positions (-1..0) x (-1..0) all clamp to (0,0)
  EXPECT_EQ(w.values()[0], img.at(0, 0));
  EXPECT_EQ(w.values()[1], img.at(0, 0));
  EXPECT_EQ(w.values()[3], img.at(0, 0));
  EXPECT_EQ(w.values()[4], img.at(0, 0));
  EXPECT_EQ(w.center_value(), img.at(0, 0));
}

TEST(WindowAt, InteriorOfIndexedImage) {
  const Window w = window_at(tens_plus_ones(), 2, 2, 3);
  EXPECT_EQ(sorted_values(w), (std::vector<int>{11, 12, 13, 21, 22, 23, 31, 32, 33}));
  EXPECT_EQ(w.center_value(), 22);
}

TEST(WindowAt, ReflectMirrorsAboutEdgePixel) {
  const GrayImage img = tens_plus_ones();
  const Window w = window_at(img, 0, 0, 3, BorderPolicy::reflect);
  // row -1 -> 1, column -1 -> 1
  EXPECT_EQ(w.values()[0], img.at(1, 1));
  EXPECT_EQ(w.values()[2], img.at(1, 1));
  EXPECT_EQ(w.values()[4], img.at(0, 0));
  EXPECT_EQ(w.values()[8], img.at(1, 1));
}

TEST(WindowAt, Errors) {
  const GrayImage img = new_image(5, 5, 0);
  try {
    window_at(img, 2, 2, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_window);
  }
  try {
    window_at(img, 5, 0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::out_of_bounds);
  }
  EXPECT_THROW(window_at(img, 0, 0, 1), Error);
}

TEST(ResolveCoordinate, ReflectHandlesTinyExtents) {
  EXPECT_EQ(resolve_coordinate(-3, 1, BorderPolicy::reflect), 0);
  EXPECT_EQ(resolve_coordinate(-1, 2, BorderPolicy::reflect), 1);
  EXPECT_EQ(resolve_coordinate(2, 2, BorderPolicy::reflect), 0);
  EXPECT_EQ(resolve_coordinate(5, 3, BorderPolicy::reflect), 1);
  for (int c = -20; c < 20; ++c) {
    const int r = resolve_coordinate(c, 3, BorderPolicy::reflect);
    EXPECT_GE(r, 0);
    EXPECT_LT(r, 3);
  }
}

TEST(WindowStats, Examples) {
  EXPECT_EQ(window_stats(Window(3, {1, 2, 3, 4, 5, 6, 7, 8, 9})), (WindowStats{1, 5, 9}));
  EXPECT_EQ(window_stats(Window(3, std::vector<Intensity>(9, 7))), (WindowStats{7, 7, 7}));
  EXPECT_EQ(window_stats(Window(3, {100, 100, 100, 100, 255, 100, 100, 100, 100})), (WindowStats{100, 100, 255}));
}

TEST(WindowStats, OrderedMembersAndPermutationInvariant) {
  std::mt19937 gen(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int side = 3 + 2 * static_cast<int>(gen() % 3);
    std::vector<Intensity> v(static_cast<std::size_t>(side) * side);
    for (auto& p : v) p = static_cast<Intensity>(gen() % 256);
    const WindowStats s = window_stats(Window(side, v));
    EXPECT_LE(s.s_min, s.s_med);
    EXPECT_LE(s.s_med, s.s_max);
    for (Intensity stat : {s.s_min, s.s_med, s.s_max}) {
      EXPECT_NE(std::find(v.begin(), v.end(), stat), v.end());
    }
    const auto ref = oracle::sorted_stats(v);
    EXPECT_EQ(s, (WindowStats{static_cast<Intensity>(ref.min), static_cast<Intensity>(ref.med),
                              static_cast<Intensity>(ref.max)}));
    std::shuffle(v.begin(), v.end(), gen);
    EXPECT_EQ(window_stats(Window(side, v)), s);
  }
}

TEST(WindowAt, AlwaysSideSquaredAndPolicyFreeInInterior) {
  const GrayImage img = oracle::random_image(9, 7, 5);
  for (int side : {3, 5, 7}) {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        const Window a = window_at(img, x, y, side, BorderPolicy::replicate);
        EXPECT_EQ(a.values().size(), static_cast<std::size_t>(side * side));
        EXPECT_EQ(a.center_value(), img.at(x, y));
        const int r = side / 2;
        if (x >= r && y >= r && x + r < img.width() && y + r < img.height()) {
          const Window b = window_at(img, x, y, side, BorderPolicy::reflect);
          EXPECT_TRUE(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
        }
      }
    }
  }
}

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "rankfilt/noise.hpp"
#include "rankfilt/rng.hpp"

using namespace rankfilt;

TEST(SplitMix64, ReferenceSequence) {
  SplitMix64 rng(1234567);
  EXPECT_EQ(rng.next(), 6457827717110365317ULL);
  EXPECT_EQ(rng.next(), 3203168211198807973ULL);
  EXPECT_EQ(rng.next(), 9817491932198370423ULL);
}

TEST(SplitMix64, UniformRangeAndNormalMoments) {
  SplitMix64 rng(9);
  double sum = 0.0;
  double sum_sq = 0.0;
  constexpr int kN = 200000;
  for (int i = 0; i < kN; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double z = rng.normal();
    sum += z;
    sum_sq += z * z;
  }
  EXPECT_NEAR(sum / kN, 0.0, 0.02);
  EXPECT_NEAR(sum_sq / kN, 1.0, 0.02);
}

TEST(Inject, ZeroDensityIsIdentity) {
  const GrayImage img = oracle::random_image(31, 17, 1);
  const NoisyImage out = inject(img, {.kind = NoiseKind::salt_pepper, .density = 0.0, .seed = 5});
  EXPECT_EQ(out.image, img);
  EXPECT_EQ(out.mask.count(), 0u);
}

TEST(Inject, FullDensityCorruptsEverything) {
  const GrayImage img = oracle::random_image(31, 17, 2);
  const NoisyImage out = inject(img, {.kind = NoiseKind::salt_pepper, .density = 1.0, .seed = 5});
  EXPECT_EQ(out.mask.count(), img.size());
  for (Intensity p : out.image.pixels()) EXPECT_TRUE(p == 0 || p == 255);
}

TEST(Inject, SaltPepperCountWithinFourSigma) {
  const GrayImage img = new_image(256, 256, 128);
  const NoiseSpec spec{.kind = NoiseKind::salt_pepper, .density = 0.3, .seed = 42};
  const NoisyImage a = inject(img, spec);
  const double mean = 65536 * 0.3;
  const double sd = std::sqrt(65536 * 0.3 * 0.7);
  EXPECT_LE(std::abs(static_cast<double>(a.mask.count()) - mean), 4 * sd);
  const NoisyImage b = inject(img, spec);
  EXPECT_EQ(a.mask.count(), b.mask.count());
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.mask, b.mask);
}

TEST(Inject, UnmaskedPixelsUntouchedAndLevelsRespected) {
  const GrayImage img = oracle::random_image(64, 48, 3);
  for (NoiseKind kind : {NoiseKind::salt_pepper, NoiseKind::fixed_impulse, NoiseKind::random_impulse}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 77ULL}) {
      const NoiseSpec spec{.kind = kind, .density = 0.25, .low = 20, .high = 200, .seed = seed};
      const NoisyImage out = inject(img, spec);
      for (std::size_t i = 0; i < img.size(); ++i) {
        const Intensity p = out.image.pixels()[i];
        if (!out.mask[i]) {
          EXPECT_EQ(p, img.pixels()[i]);
        } else if (kind == NoiseKind::random_impulse) {
          EXPECT_GE(p, 20);
          EXPECT_LE(p, 200);
        } else {
          EXPECT_TRUE(p == 20 || p == 200);
        }
      }
    }
  }
}

TEST(Inject, RandomImpulseCoversRange) {
  const NoisyImage out =
      inject(new_image(128, 128, 0), {.kind = NoiseKind::random_impulse, .density = 1.0, .low = 10, .high = 13, .seed = 4});
  std::array<int, 256> seen{};
  for (Intensity p : out.image.pixels()) ++seen[p];
  for (int v = 10; v <= 13; ++v) EXPECT_GT(seen[v], 3000);
}

TEST(Inject, SaltAndPepperSplitRoughlyEven) {
  const NoisyImage out = inject(new_image(256, 256, 128), {.kind = NoiseKind::salt_pepper, .density = 1.0, .seed = 8});
  int salt = 0;
  for (Intensity p : out.image.pixels()) salt += p == 255;
  EXPECT_NEAR(salt, 32768, 4 * 128);
}

TEST(Inject, GaussianMarksChangedPixelsOnly) {
  const GrayImage img = oracle::random_image(64, 64, 4);
  const NoisyImage out = inject(img, {.kind = NoiseKind::gaussian, .sigma = 5.0, .seed = 1});
  std::size_t changed = 0;
  for (std::size_t i = 0; i < img.size(); ++i) {
    const bool diff = out.image.pixels()[i] != img.pixels()[i];
    EXPECT_EQ(out.mask[i], diff);
    changed += diff;
  }
  EXPECT_GT(changed, img.size() / 2);
  EXPECT_EQ(inject(img, {.kind = NoiseKind::gaussian, .sigma = 0.0, .seed = 1}).image, img);
}

TEST(Inject, EmpiricalFractionConverges) {
  const GrayImage img = new_image(512, 512, 50);
  for (double p : {0.01, 0.1, 0.5, 0.9}) {
    const NoisyImage out = inject(img, {.kind = NoiseKind::fixed_impulse, .density = p, .seed = 123});
    const double frac = static_cast<double>(out.mask.count()) / 262144.0;
    EXPECT_LE(std::abs(frac - p), 4 * std::sqrt(p * (1 - p) / 262144.0)) << p;
  }
}

TEST(Inject, RejectsInvalidSpec) {
  const GrayImage img = new_image(4, 4, 0);
  EXPECT_THROW(inject(img, {.density = -0.1}), Error);
  EXPECT_THROW(inject(img, {.density = 1.5}), Error);
  EXPECT_THROW(inject(img, {.kind = NoiseKind::fixed_impulse, .density = 0.1, .low = 9, .high = 9}), Error);
  EXPECT_THROW(inject(img, {.kind = NoiseKind::gaussian, .sigma = -1.0}), Error);
}

TEST(NoiseMask, ImageRoundTrip) {
  const NoisyImage out = inject(oracle::random_image(20, 10, 5), {.density = 0.4, .seed = 3});
  const GrayImage as_image = out.mask.to_image();
  for (Intensity p : as_image.pixels()) EXPECT_TRUE(p == 0 || p == 255);
  EXPECT_EQ(NoiseMask::from_image(as_image), out.mask);
}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mrsde/image.hpp"

using namespace mrsde;

TEST_CASE("image construction and indexing") {
  ImageF img(2, 3, 3, 0.25f);
  CHECK(img.height() == 2);
  CHECK(img.width() == 3);
  CHECK(img.channels() == 3);
  CHECK(img.size() == 18);
  img.at(1, 2, 0) = 0.5f;
  CHECK(img.at(1, 2, 0) == 0.5f);
  CHECK(img.data()[(1 * 3 + 2) * 3 + 0] == 0.5f);
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(ImageF(0, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(ImageF(3, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(ImageF(3, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(ImageF(3, 3, 4), std::invalid_argument);
  CHECK_THROWS_AS(ImageF(2, 2, 1, std::vector<float>(5)), std::invalid_argument);
}

TEST_CASE("clamp and finiteness") {
  ImageF img(1, 3, 1);
  img.at(0, 0, 0) = -0.5f;
  img.at(0, 1, 0) = 0.5f;
  img.at(0, 2, 0) = 1.5f;
  CHECK(img.all_finite());
  img.clamp(0.0f, 1.0f);
  CHECK(img.at(0, 0, 0) == 0.0f);
  CHECK(img.at(0, 1, 0) == 0.5f);
  CHECK(img.at(0, 2, 0) == 1.0f);

  img.at(0, 1, 0) = std::numeric_limits<float>::quiet_NaN();
  CHECK_FALSE(img.all_finite());
}

TEST_CASE("image_cast converts sample types") {
  ImageF img(1, 2, 1);
  img.at(0, 0, 0) = 0.25f;
  img.at(0, 1, 0) = 0.75f;
  const ImageD d = image_cast<double>(img);
  CHECK(d.at(0, 0, 0) == doctest::Approx(0.25));
  const ImageF back = image_cast<float>(d);
  CHECK(back == img);
}

TEST_CASE("same_shape and equality") {
  ImageF a(2, 2, 1, 0.5f);
  ImageF b(2, 2, 1, 0.5f);
  ImageF c(2, 2, 3, 0.5f);
  CHECK(a.same_shape(b));
  CHECK(a == b);
  CHECK_FALSE(a.same_shape(c));
  b.at(0, 0, 0) = 0.1f;
  CHECK_FALSE(a == b);
  CHECK_THROWS_AS(require_same_shape(a, c, "test"), std::invalid_argument);
}

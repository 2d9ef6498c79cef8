// Copyright 2026 The viewbayes Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "viewbayes/render.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

#include "viewbayes/error.hpp"
#include "viewbayes/procedural.hpp"

namespace viewbayes {
namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

const Mesh& icosphere() {
  static const Mesh m = resolve_mesh("icosphere:3");
  return m;
}

Viewpoint looking_from_z() {
  Viewpoint vp;
  vp.direction = Eigen::Vector3d::UnitZ();
  vp.up = Eigen::Vector3d::UnitY();
  return vp;
}

TEST(RenderSilhouette, IcosphereFillsInscribedDisc) {
  for (const auto& wv : sphere_viewpoints(45)) {
    const AspectImage img = render_silhouette(icosphere(), wv.viewpoint, 256);
    EXPECT_NEAR(img.fill_fraction(), kQuarterPi, 0.02);
  }
}

TEST(RenderSilhouette, CubeAlongZIsCentredSquare) {
  const AspectImage img = render_silhouette(resolve_mesh("cube"), looking_from_z(), 256);
  EXPECT_NEAR(img.fill_fraction(), 1.0 / 3.0, 0.01);

  int rmin = 256, rmax = -1, cmin = 256, cmax = -1;
  for (int r = 0; r < 256; ++r) {
    for (int c = 0; c < 256; ++c) {
      if (!img.pixels(r, c)) continue;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
  }
  EXPECT_EQ(rmax - rmin, cmax - cmin);
  EXPECT_EQ(rmin + rmax, 255);  // symmetric about the centre
  // Axis-aligned: the bounding box is completely filled.
  const auto box = (rmax - rmin + 1) * (cmax - cmin + 1);
  EXPECT_EQ(img.set_count(), box);
}

TEST(RenderSilhouette, ContractErrors) {
  Mesh empty = icosphere();
  empty.triangles.resize(3, 0);
  EXPECT_THROW(render_silhouette(empty, looking_from_z(), 64), ContractError);

  Mesh big = icosphere();
  big.vertices *= 1.5;
  EXPECT_THROW(render_silhouette(big, looking_from_z(), 64), ContractError);

  EXPECT_THROW(render_silhouette(icosphere(), looking_from_z(), 8), ContractError);
}

TEST(RenderSilhouette, DeterministicAndOrderIndependent) {
  const Mesh bracket = resolve_mesh("lbracket");
  const Viewpoint vp = ring_viewpoint(37.0);
  const AspectImage a = render_silhouette(bracket, vp, 128);
  const AspectImage b = render_silhouette(bracket, vp, 128);
  EXPECT_TRUE(a.pixels == b.pixels);

  Mesh shuffled = bracket;
  std::vector<Eigen::Index> order(static_cast<std::size_t>(bracket.triangle_count()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937(3));
  for (std::size_t i = 0; i < order.size(); ++i) {
    shuffled.triangles.col(static_cast<Eigen::Index>(i)) = bracket.triangles.col(order[i]);
  }
  EXPECT_TRUE(render_silhouette(shuffled, vp, 128).pixels == a.pixels);
}

TEST(RenderSilhouette, FillNeverExceedsUnitDisc) {
  for (const auto* name : {"icosphere:3", "cube", "lbracket"}) {
    const Mesh m = resolve_mesh(name);
    for (const auto& wv : sphere_viewpoints(30)) {
      EXPECT_LE(render_silhouette(m, wv.viewpoint, 128).fill_fraction(), kQuarterPi + 0.02) << name;
    }
  }
}

TEST(ExtractDescriptor, TranslationInvariant) {
  const AspectImage img = render_silhouette(resolve_mesh("lbracket"), ring_viewpoint(20.0), 256);
  for (const auto& [dr, dc] : {std::pair{7, -5}, std::pair{-20, 13}, std::pair{1, 1}}) {
    AspectImage shifted = img;
    shifted.pixels.setZero();
    for (int r = 0; r < 256; ++r) {
      for (int c = 0; c < 256; ++c) {
        if (!img.pixels(r, c)) continue;
        ASSERT_TRUE(r + dr >= 0 && r + dr < 256 && c + dc >= 0 && c + dc < 256);
        shifted.pixels(r + dr, c + dc) = 1;
      }
    }
    for (int g : {4, 8, 16}) {
      EXPECT_LE(descriptor_distance(extract_descriptor(img, g), extract_descriptor(shifted, g)), 2.0 / g);
    }
  }
}

TEST(ExtractDescriptor, FullFrame) {
  AspectImage img;
  img.pixels = Occupancy::Ones(64, 64);
  const ViewDescriptor d = extract_descriptor(img, 4);
  ASSERT_EQ(d.size(), 16 + 4);
  for (int i = 0; i < 16; ++i) EXPECT_DOUBLE_EQ(d.values(i), 1.0);
  EXPECT_DOUBLE_EQ(d.values(16), 1.0);
}

TEST(ExtractDescriptor, IcosphereMomentsAreIsotropic) {
  const AspectImage img = render_silhouette(icosphere(), ring_viewpoint(0.0), 256);
  const ViewDescriptor d = extract_descriptor(img, 8);
  EXPECT_LE(d.values(64 + 2), 0.01);

  // Brute-force central moments, normalized by area^2 in viewport units.
  double n = 0, su = 0, sv = 0;
  for (int r = 0; r < 256; ++r)
    for (int c = 0; c < 256; ++c)
      if (img.pixels(r, c)) {
        n += 1;
        su += c;
        sv += r;
      }
  const double cu = su / n, cv = sv / n;
  double m20 = 0, m02 = 0, m11 = 0;
  for (int r = 0; r < 256; ++r)
    for (int c = 0; c < 256; ++c)
      if (img.pixels(r, c)) {
        m20 += (c - cu) * (c - cu);
        m02 += (r - cv) * (r - cv);
        m11 += (c - cu) * (r - cv);
      }
  // In pixel units eta = mu / n^2 directly (pixel area 1).
  EXPECT_LE(std::abs(m20 - m02) / (n * n), 0.01);
  EXPECT_NEAR(d.values(64 + 1), (m20 + m02) / (n * n), 1e-12);
  EXPECT_NEAR(d.values(64 + 2), std::abs(m20 - m02) / (n * n), 1e-12);
  EXPECT_NEAR(d.values(64 + 3), std::abs(m11) / (n * n), 1e-12);
  // Disc: eta20 + eta02 = 1 / (2 pi).
  EXPECT_NEAR(d.values(64 + 1), 1.0 / (2.0 * std::numbers::pi), 0.002);
}

TEST(ExtractDescriptor, Errors) {
  AspectImage img;
  img.pixels = Occupancy::Zero(32, 32);
  EXPECT_THROW(extract_descriptor(img, 8), EmptySilhouetteError);
  img.pixels(3, 3) = 1;
  EXPECT_THROW(extract_descriptor(img, 2), ContractError);
  EXPECT_THROW(extract_descriptor(img, 33), ContractError);
}

TEST(DescriptorDistance, MetricProperties) {
  const Mesh bracket = resolve_mesh("lbracket");
  std::vector<ViewDescriptor> ds;
  for (double a = 0; a < 360; a += 40) ds.push_back(extract_descriptor(render_silhouette(bracket, ring_viewpoint(a), 96)));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    EXPECT_EQ(descriptor_distance(ds[i], ds[i]), 0.0);
    for (std::size_t j = 0; j < ds.size(); ++j) {
      EXPECT_EQ(descriptor_distance(ds[i], ds[j]), descriptor_distance(ds[j], ds[i]));
      for (std::size_t k = 0; k < ds.size(); ++k) {
        EXPECT_LE(descriptor_distance(ds[i], ds[k]),
                  descriptor_distance(ds[i], ds[j]) + descriptor_distance(ds[j], ds[k]) + 1e-15);
      }
    }
  }
  ViewDescriptor other = ds[0];
  other.values.conservativeResize(other.size() - 1);
  EXPECT_THROW(descriptor_distance(ds[0], other), ContractError);
}

TEST(DescriptorDistance, IcosphereRingViewsAgree) {
  const ViewRing ring = ring_viewpoints(5);
  std::vector<ViewDescriptor> ds;
  for (const auto& vp : ring.viewpoints) ds.push_back(extract_descriptor(render_silhouette(icosphere(), vp, 256)));
  double worst = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i)
    for (std::size_t j = i + 1; j < ds.size(); ++j) worst = std::max(worst, descriptor_distance(ds[i], ds[j]));
  EXPECT_LE(worst, 0.05);
}

TEST(ExtractDescriptor, StableUnderResolutionDoubling) {
  for (const auto* name : {"icosphere:3", "cube", "lbracket"}) {
    const Mesh m = resolve_mesh(name);
    for (double a = 0; a < 360; a += 30) {
      const auto coarse = extract_descriptor(render_silhouette(m, ring_viewpoint(a), 256));
      const auto fine = extract_descriptor(render_silhouette(m, ring_viewpoint(a), 512));
      EXPECT_LE((coarse.values - fine.values).cwiseAbs().maxCoeff(), 0.05) << name << " @ " << a;
    }
  }
}

TEST(WritePgm, HeaderAndPayload) {
  AspectImage img;
  img.pixels = Occupancy::Zero(16, 16);
  img.pixels(0, 1) = 1;
  std::ostringstream out;
  write_pgm(out, img);
  const std::string s = out.str();
  const std::string header = "P5\n16 16\n255\n";
  ASSERT_EQ(s.size(), header.size() + 256);
  EXPECT_EQ(s.substr(0, header.size()), header);
  EXPECT_EQ(static_cast<unsigned char>(s[header.size() + 1]), 255);
  EXPECT_EQ(s[header.size()], '\0');
}

}  // namespace
}  // namespace viewbayes

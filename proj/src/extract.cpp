// Copyright 2026 The Vecplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vecplan/extract.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include <json.hpp>

namespace vecplan {

std::vector<Peak> extract_peaks(std::span<const double> plane, int resolution, double threshold,
                                int min_area) {
  std::vector<uint8_t> visited(plane.size(), 0);
  std::vector<Peak> peaks;

  for (int si = 0; si < resolution; ++si) {
    for (int sj = 0; sj < resolution; ++sj) {
      const size_t start = static_cast<size_t>(si) * resolution + sj;
      if (visited[start] || plane[start] < threshold) continue;

      // 4-connected flood fill.
      Peak peak;
      peak.row_min = peak.row_max = si;
      peak.col_min = peak.col_max = sj;
      std::deque<std::pair<int, int>> queue{{si, sj}};
      visited[start] = 1;
      while (!queue.empty()) {
        const auto [i, j] = queue.front();
        queue.pop_front();
        peak.component.emplace_back(i, j);
        peak.row_min = std::min(peak.row_min, i);
        peak.row_max = std::max(peak.row_max, i);
        peak.col_min = std::min(peak.col_min, j);
        peak.col_max = std::max(peak.col_max, j);
        constexpr int di[] = {-1, 1, 0, 0};
        constexpr int dj[] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
          const int ni = i + di[k], nj = j + dj[k];
          if (ni < 0 || ni >= resolution || nj < 0 || nj >= resolution) continue;
          const size_t idx = static_cast<size_t>(ni) * resolution + nj;
          if (visited[idx] || plane[idx] < threshold) continue;
          visited[idx] = 1;
          queue.emplace_back(ni, nj);
        }
      }
      if (static_cast<int>(peak.component.size()) < min_area) continue;

      double max_value = -1.0;
      for (const auto& [i, j] : peak.component)
        max_value = std::max(max_value, plane[static_cast<size_t>(i) * resolution + j]);
      peak.value = max_value;

      // Centroid of the max-valued pixels; the reported pixel is the max
      // pixel nearest that centroid (then smallest row, then column), so
      // flat plateaus such as rendered ground-truth disks resolve to their
      // center rather than their first pixel in scan order.
      double ci = 0.0, cj = 0.0;
      size_t max_count = 0;
      for (const auto& [i, j] : peak.component) {
        if (plane[static_cast<size_t>(i) * resolution + j] == max_value) {
          ci += i;
          cj += j;
          ++max_count;
        }
      }
      ci /= static_cast<double>(max_count);
      cj /= static_cast<double>(max_count);
      peak.peak_centroid = {cj, ci};

      double best_d2 = 0.0;
      int best_i = -1, best_j = -1;
      for (const auto& [i, j] : peak.component) {
        if (plane[static_cast<size_t>(i) * resolution + j] != max_value) continue;
        const double d2 = (i - ci) * (i - ci) + (j - cj) * (j - cj);
        if (best_i < 0 || d2 < best_d2 - 1e-12 ||
            (std::abs(d2 - best_d2) <= 1e-12 && (i < best_i || (i == best_i && j < best_j)))) {
          best_d2 = d2;
          best_i = i;
          best_j = j;
        }
      }
      peak.position = {static_cast<double>(best_j), static_cast<double>(best_i)};
      std::sort(peak.component.begin(), peak.component.end());
      peaks.push_back(std::move(peak));
    }
  }

  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    return std::tie(a.position.y, a.position.x) < std::tie(b.position.y, b.position.x);
  });
  return peaks;
}

std::vector<CornerCandidate> extract_corners(const HeatmapStack& stack) {
  std::vector<CornerCandidate> out;
  for (int v = 0; v < kJunctionTypeCount; ++v) {
    const int channel = channels::kJunctionBase + v;
    for (Peak& peak : extract_peaks(stack.plane(channel), stack.resolution)) {
      CornerCandidate c;
      static_cast<Peak&>(c) = std::move(peak);
      c.junction = static_cast<JunctionType>(v);
      out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), [](const CornerCandidate& a, const CornerCandidate& b) {
    return std::tie(a.position.y, a.position.x, a.junction) <
           std::tie(b.position.y, b.position.x, b.junction);
  });
  return out;
}

namespace {

bool ranges_overlap(int lo1, int hi1, int lo2, int hi2) { return lo1 <= hi2 && lo2 <= hi1; }

bool admits(const CornerCandidate& c, Direction d) {
  return junction_directions(c.junction).contains(d);
}

}  // namespace

std::vector<WallCandidate> gen_wall_candidates(const std::vector<CornerCandidate>& corners) {
  std::vector<WallCandidate> out;
  for (size_t i = 0; i < corners.size(); ++i) {
    for (size_t j = i + 1; j < corners.size(); ++j) {
      const CornerCandidate& a = corners[i];
      const CornerCandidate& b = corners[j];

      // Horizontal wall: the components overlap along Y (share pixel rows).
      if (ranges_overlap(a.row_min, a.row_max, b.row_min, b.row_max) &&
          a.position.x != b.position.x) {
        const bool a_left = a.position.x < b.position.x;
        const Direction from_a = a_left ? Direction::PosX : Direction::NegX;
        if (admits(a, from_a) && admits(b, opposite(from_a))) {
          WallCandidate w;
          w.a = static_cast<int>(i);
          w.b = static_cast<int>(j);
          w.horizontal = true;
          const double y = 0.5 * (a.position.y + b.position.y);
          w.p1 = {a.position.x, y};
          w.p2 = {b.position.x, y};
          out.push_back(w);
        }
      }
      // Vertical wall: the components overlap along X (share pixel columns).
      if (ranges_overlap(a.col_min, a.col_max, b.col_min, b.col_max) &&
          a.position.y != b.position.y) {
        const bool a_above = a.position.y < b.position.y;
        const Direction from_a = a_above ? Direction::PosY : Direction::NegY;
        if (admits(a, from_a) && admits(b, opposite(from_a))) {
          WallCandidate w;
          w.a = static_cast<int>(i);
          w.b = static_cast<int>(j);
          w.horizontal = false;
          const double x = 0.5 * (a.position.x + b.position.x);
          w.p1 = {x, a.position.y};
          w.p2 = {x, b.position.y};
          out.push_back(w);
        }
      }
    }
  }
  return out;
}

double score_line(const HeatmapStack& stack, const Vec2& a, const Vec2& b, int width) {
  const auto strip = rasterize_segment_strip(a, b, width, stack.resolution);
  if (strip.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [i, j] : strip) sum += stack.at(channels::kRoomWall, i, j);
  return sum / static_cast<double>(strip.size());
}

std::vector<OpeningCandidate> gen_opening_candidates(const HeatmapStack& stack,
                                                     const std::vector<WallCandidate>& walls) {
  // End-point peaks per orientation channel.
  std::vector<Peak> by_orientation[4];
  for (int d = 0; d < 4; ++d)
    by_orientation[d] = extract_peaks(stack.plane(channels::kOpeningBase + d), stack.resolution);

  struct PairOption {
    double span;
    int d;           // orientation of the first end-point (PosX or PosY)
    int first, second;
    std::vector<int> hosts;
  };
  std::vector<PairOption> options;

  const auto hosts_of = [&walls](const Vec2& p, const Vec2& q, bool horizontal) {
    std::vector<int> hosts;
    for (size_t w = 0; w < walls.size(); ++w) {
      if (walls[w].horizontal != horizontal) continue;
      if (point_segment_distance(p, walls[w].p1, walls[w].p2) <= kAxisTolerance &&
          point_segment_distance(q, walls[w].p1, walls[w].p2) <= kAxisTolerance)
        hosts.push_back(static_cast<int>(w));
    }
    return hosts;
  };

  // +X faces -X along a horizontal wall, +Y faces -Y along a vertical one.
  for (const int d : {static_cast<int>(Direction::PosX), static_cast<int>(Direction::PosY)}) {
    const bool horizontal = d == static_cast<int>(Direction::PosX);
    const auto& side_a = by_orientation[d];
    const auto& side_b = by_orientation[static_cast<int>(opposite(static_cast<Direction>(d)))];
    for (size_t i = 0; i < side_a.size(); ++i) {
      for (size_t j = 0; j < side_b.size(); ++j) {
        const Vec2& p = side_a[i].position;
        const Vec2& q = side_b[j].position;
        const double along = horizontal ? q.x - p.x : q.y - p.y;
        if (along <= 0.0) continue;  // not facing each other
        auto hosts = hosts_of(p, q, horizontal);
        if (hosts.empty()) continue;
        options.push_back({along, d, static_cast<int>(i), static_cast<int>(j), std::move(hosts)});
      }
    }
  }

  // Greedy by distance: each end-point pairs with its nearest facing partner.
  std::sort(options.begin(), options.end(), [](const PairOption& a, const PairOption& b) {
    return std::tie(a.span, a.d, a.first, a.second) < std::tie(b.span, b.d, b.first, b.second);
  });
  std::vector<uint8_t> used[4];
  for (int d = 0; d < 4; ++d) used[d].assign(by_orientation[d].size(), 0);
  std::vector<OpeningCandidate> out;
  for (const PairOption& opt : options) {
    const int d_second = static_cast<int>(opposite(static_cast<Direction>(opt.d)));
    if (used[opt.d][opt.first] || used[d_second][opt.second]) continue;
    used[opt.d][opt.first] = used[d_second][opt.second] = true;
    OpeningCandidate cand;
    cand.p1 = by_orientation[opt.d][opt.first].position;
    cand.p2 = by_orientation[d_second][opt.second].position;
    cand.horizontal = opt.d == static_cast<int>(Direction::PosX);
    cand.host_walls = opt.hosts;
    cand.confidence = score_line(stack, cand.p1, cand.p2, kOpeningScoreWidth);
    cand.weight = cand.confidence - kConfidenceOffset;
    out.push_back(std::move(cand));
  }
  std::sort(out.begin(), out.end(), [](const OpeningCandidate& a, const OpeningCandidate& b) {
    return std::tie(a.p1.y, a.p1.x, a.p2.y, a.p2.x) < std::tie(b.p1.y, b.p1.x, b.p2.y, b.p2.x);
  });
  return out;
}

std::vector<IconCandidate> gen_icon_candidates(const HeatmapStack& stack) {
  std::vector<Peak> corners[4];  // TL, TR, BR, BL
  for (int k = 0; k < 4; ++k)
    corners[k] = extract_peaks(stack.plane(channels::kIconCornerBase + k), stack.resolution);

  const auto close = [](double a, double b) { return std::abs(a - b) <= kAxisTolerance; };

  std::vector<IconCandidate> out;
  for (const Peak& tl : corners[0]) {
    for (const Peak& tr : corners[1]) {
      if (!close(tl.position.y, tr.position.y) || tr.position.x <= tl.position.x) continue;
      for (const Peak& br : corners[2]) {
        if (!close(tr.position.x, br.position.x) || br.position.y <= tr.position.y) continue;
        for (const Peak& bl : corners[3]) {
          if (!close(tl.position.x, bl.position.x) || !close(bl.position.y, br.position.y))
            continue;
          Rect rect{0.5 * (tl.position.x + bl.position.x), 0.5 * (tl.position.y + tr.position.y),
                    0.5 * (tr.position.x + br.position.x), 0.5 * (bl.position.y + br.position.y)};
          if (rect.width() <= 1.0 || rect.height() <= 1.0) continue;

          // Mean icon-semantic probabilities over the rect interior.
          const auto pixels = rasterize_rect(rect, stack.resolution);
          if (pixels.empty()) continue;
          double mean[channels::kIconSemanticCount] = {};
          for (const auto& [i, j] : pixels)
            for (int c = 0; c < channels::kIconSemanticCount; ++c)
              mean[c] += stack.at(channels::kIconSemanticBase + c, i, j);
          for (double& m : mean) m /= static_cast<double>(pixels.size());

          // Interior consistency: a rect that is mostly background is a
          // spurious corner combination.
          if (mean[0] > 0.5) continue;
          int best = 0;
          for (int c = 1; c < kIconKindCount; ++c)
            if (mean[1 + c] > mean[1 + best]) best = c;

          IconCandidate cand;
          cand.rect = rect;
          cand.kind = static_cast<IconKind>(best);
          cand.confidence = mean[1 + best];
          cand.weight = cand.confidence - kConfidenceOffset;
          out.push_back(cand);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const IconCandidate& a, const IconCandidate& b) {
    return std::tie(a.rect.ymin, a.rect.xmin, a.rect.ymax, a.rect.xmax) <
           std::tie(b.rect.ymin, b.rect.xmin, b.rect.ymax, b.rect.xmax);
  });
  return out;
}

CandidateSet extract_candidates(const HeatmapStack& stack) {
  CandidateSet set;
  set.corners = extract_corners(stack);
  set.walls = gen_wall_candidates(set.corners);
  for (WallCandidate& w : set.walls) {
    w.confidence = score_line(stack, w.p1, w.p2, kWallScoreWidth);
    w.weight = w.confidence - kConfidenceOffset;
  }
  set.openings = gen_opening_candidates(stack, set.walls);
  set.icons = gen_icon_candidates(stack);
  return set;
}

std::string candidate_set_to_json(const CandidateSet& set) {
  nlohmann::ordered_json doc;
  doc["corners"] = nlohmann::ordered_json::array();
  for (const CornerCandidate& c : set.corners) {
    doc["corners"].push_back({{"x", c.position.x},
                              {"y", c.position.y},
                              {"junction", to_string(c.junction)},
                              {"peak_value", c.value},
                              {"component_area", c.component.size()}});
  }
  doc["walls"] = nlohmann::ordered_json::array();
  for (const WallCandidate& w : set.walls) {
    doc["walls"].push_back({{"a", w.a},
                            {"b", w.b},
                            {"x1", w.p1.x},
                            {"y1", w.p1.y},
                            {"x2", w.p2.x},
                            {"y2", w.p2.y},
                            {"confidence", w.confidence},
                            {"weight", w.weight}});
  }
  doc["openings"] = nlohmann::ordered_json::array();
  for (const OpeningCandidate& o : set.openings) {
    doc["openings"].push_back({{"x1", o.p1.x},
                               {"y1", o.p1.y},
                               {"x2", o.p2.x},
                               {"y2", o.p2.y},
                               {"confidence", o.confidence},
                               {"weight", o.weight},
                               {"host_walls", o.host_walls}});
  }
  doc["icons"] = nlohmann::ordered_json::array();
  for (const IconCandidate& icon : set.icons) {
    doc["icons"].push_back({{"kind", to_string(icon.kind)},
                            {"xmin", icon.rect.xmin},
                            {"ymin", icon.rect.ymin},
                            {"xmax", icon.rect.xmax},
                            {"ymax", icon.rect.ymax},
                            {"confidence", icon.confidence},
                            {"weight", icon.weight}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace vecplan

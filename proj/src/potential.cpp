#include "qtt/potential.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qtt {

namespace {

void validate_segment(const Segment& s) {
  if (!(s.width > 0.0) || !std::isfinite(s.width)) {
    throw std::invalid_argument("segment width must be positive and finite");
  }
  if (!std::isfinite(s.height)) {
    throw std::invalid_argument("segment height must be finite");
  }
}

}  // namespace

PiecewiseConstantPotential::PiecewiseConstantPotential(
    std::vector<Segment> segments)
    : segments_(std::move(segments)), total_width_(0.0) {
  if (segments_.empty()) {
    throw std::invalid_argument("potential needs at least one segment");
  }
  for (const auto& s : segments_) {
    validate_segment(s);
    total_width_ += s.width;
  }
}

double PiecewiseConstantPotential::barrier_width() const {
  double w = 0.0;
  for (const auto& s : segments_) {
    if (s.height != 0.0) w += s.width;
  }
  return w;
}

double PiecewiseConstantPotential::max_height() const {
  double h = segments_.front().height;
  for (const auto& s : segments_) {
    if (s.height > h) h = s.height;
  }
  return h;
}

PiecewiseConstantPotential make_rectangular(double height, double width) {
  if (!(width > 0.0) || !std::isfinite(width)) {
    throw std::invalid_argument("rectangular width must be positive");
  }
  if (!std::isfinite(height)) {
    throw std::invalid_argument("rectangular height must be finite");
  }
  return PiecewiseConstantPotential({{width, height}});
}

PiecewiseConstantPotential make_segments(std::vector<Segment> segments) {
  return PiecewiseConstantPotential(std::move(segments));
}

PiecewiseConstantPotential make_cantor(CantorVariant variant, int level,
                                       double height, double total_width,
                                       double ratio) {
  if (level < 0) {
    throw std::invalid_argument("cantor level must be >= 0");
  }
  // 2^level barrier pieces; cap the blow-up before it exhausts memory.
  if (level > 24) {
    throw std::invalid_argument("cantor level too large (max 24)");
  }
  if (!(total_width > 0.0) || !std::isfinite(total_width)) {
    throw std::invalid_argument("cantor total width must be positive");
  }
  if (!std::isfinite(height)) {
    throw std::invalid_argument("cantor height must be finite");
  }
  if (variant == CantorVariant::kStandard &&
      (!(ratio > 0.0) || !(ratio < 1.0))) {
    throw std::invalid_argument("cantor ratio must lie in (0, 1)");
  }

  struct Piece {
    double width;
    bool barrier;
  };
  std::vector<Piece> pieces{{total_width, true}};
  for (int step = 1; step <= level; ++step) {
    const double fraction = variant == CantorVariant::kStandard
                                ? ratio
                                : std::pow(0.25, step);
    std::vector<Piece> next;
    next.reserve(pieces.size() * 2 + 1);
    for (const auto& p : pieces) {
      if (!p.barrier) {
        next.push_back(p);
        continue;
      }
      const double gap = p.width * fraction;
      const double side = p.width * (1.0 - fraction) * 0.5;
      next.push_back({side, true});
      next.push_back({gap, false});
      next.push_back({side, true});
    }
    pieces = std::move(next);
  }

  std::vector<Segment> segments;
  segments.reserve(pieces.size());
  for (const auto& p : pieces) {
    segments.push_back({p.width, p.barrier ? height : 0.0});
  }
  return PiecewiseConstantPotential(std::move(segments));
}

}  // namespace qtt

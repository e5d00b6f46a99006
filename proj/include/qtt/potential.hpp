#ifndef QTT_POTENTIAL_HPP
#define QTT_POTENTIAL_HPP

#include <vector>

namespace qtt {

// One constant piece of a piecewise-constant potential.
struct Segment {
  double width;   // > 0
  double height;  // finite; zero for free regions, negative for wells
  bool operator==(const Segment&) const = default;
};

// Piecewise-constant potential V(x) on [0, b], stored as an ordered list of
// constant segments. b is the sum of the segment widths. Values are
// immutable after construction and safe to share between threads.
class PiecewiseConstantPotential {
 public:
  explicit PiecewiseConstantPotential(std::vector<Segment> segments);

  const std::vector<Segment>& segments() const { return segments_; }
  double total_width() const { return total_width_; }

  // Combined width of the nonzero-height segments.
  double barrier_width() const;
  double max_height() const;

  bool operator==(const PiecewiseConstantPotential&) const = default;

 private:
  std::vector<Segment> segments_;
  double total_width_;
};

// Single barrier (or well) of the given height covering [0, width].
PiecewiseConstantPotential make_rectangular(double height, double width);

// Potential from an explicit segment list, in order.
PiecewiseConstantPotential make_segments(std::vector<Segment> segments);

enum class CantorVariant {
  kStandard,       // remove the middle `ratio` fraction at every step
  kSmithVolterra,  // remove the middle 1/4^j fraction at step j (1-indexed)
};

// Fractal barrier arrangement on [0, total_width]: starts from a single
// barrier of the given height and applies `level` middle-removal steps to
// every barrier piece. Removed intervals become zero-height segments, so the
// total width is preserved. ratio is only meaningful for kStandard.
PiecewiseConstantPotential make_cantor(CantorVariant variant, int level,
                                       double height, double total_width,
                                       double ratio = 1.0 / 3.0);

}  // namespace qtt

#endif  // QTT_POTENTIAL_HPP

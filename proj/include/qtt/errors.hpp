#ifndef QTT_ERRORS_HPP
#define QTT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtt {

// Transfer matrix whose (1,1) entry vanishes; no transmission amplitude
// can be extracted from it.
class DegenerateMatrixError : public std::runtime_error {
 public:
  explicit DegenerateMatrixError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// Closed-form expression evaluated outside the regime it is valid in
// (e.g. the rectangular tunneling formulas require E < V).
class OutOfRegimeError : public std::domain_error {
 public:
  explicit OutOfRegimeError(const std::string& msg)
      : std::domain_error(msg) {}
};

// A phase evaluation (or a finite-difference stencil around it) touched a
// point flagged as numerically near-singular (band edge / resonance).
class ResonanceProximityError : public std::runtime_error {
 public:
  explicit ResonanceProximityError(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace qtt

#endif  // QTT_ERRORS_HPP

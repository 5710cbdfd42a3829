#pragma once

#include <pencil/rng.hpp>
#include <pencil/types.hpp>

#include <cstdint>
#include <optional>
#include <vector>

namespace pencil {

enum class Orientation { vertical, horizontal };
enum class Side { left, right };  // for horizontal lines "right" means above

/// Boundary lattice of s1 x s2 boxes of side omega, lower-left corner z0.
struct Grid {
  Complex z0;
  double omega = 1.0;
  std::int64_t s1 = 1;  // boxes along the real axis
  std::int64_t s2 = 1;  // boxes along the imaginary axis

  double re0() const { return z0.real(); }
  double im0() const { return z0.imag(); }
  double re1() const { return z0.real() + omega * static_cast<double>(s1); }
  double im1() const { return z0.imag() + omega * static_cast<double>(s2); }
  std::int64_t boxes(Orientation o) const { return o == Orientation::vertical ? s1 : s2; }
};

struct GridLine {
  Orientation orientation = Orientation::vertical;
  double coordinate = 0.0;  // the h in Re(z) = h or Im(z) = h
  std::int64_t index = 0;   // coordinate = z0 component + index * omega
};

GridLine grid_line(const Grid& g, Orientation o, std::int64_t index);

/// Random grid covering B_3(0): z0 = -4-4i plus a uniform offset in
/// [0, min(omega, 1))^2, s1 = s2 = ceil(8/omega). Throws on omega <= 0
/// (InvalidOmega) and on grids too fine to index in 64 bits.
Grid random_grid(double omega, RngStream rng);

struct BoxLocation {
  enum class Kind { box, outside, on_line };
  Kind kind = Kind::outside;
  std::int64_t i = 0;
  std::int64_t j = 0;
  bool is_box() const { return kind == Kind::box; }
};

/// Box containing z, Outside beyond the lattice, OnGridLine when z lies
/// within 1e-14 * omega of a grid line (the caller decides what to do).
BoxLocation box_of(const Grid& g, Complex z);

/// Interior lines of one orientation in binary-search order: median first,
/// then medians of the halves, level by level. Covers every interior line
/// when run to exhaustion. Throws for grids with more than `cap` interior
/// lines (too many to materialize).
std::vector<GridLine> search_order(const Grid& g, Orientation o, std::int64_t cap = 1 << 22);

/// Sub-grid on one side of an interior line; throws (EmptyHalf) for a
/// boundary line.
Grid half_grid(const Grid& g, const GridLine& line, Side side);

/// Steered binary descent over the interior lines of one orientation. The
/// first probe is the search_order median; steer_low()/steer_high() move
/// toward smaller/larger coordinates. Probes at most
/// floor(log2(interior count)) + 1 lines.
class LineSearchCursor {
 public:
  LineSearchCursor(const Grid& g, Orientation o);
  bool exhausted() const { return lo_ > hi_; }
  GridLine current() const;
  void steer_low();
  void steer_high();

 private:
  std::int64_t mid() const { return lo_ + (hi_ - lo_) / 2; }
  const Grid* g_;
  Orientation o_;
  std::int64_t lo_, hi_;
};

}  // namespace pencil

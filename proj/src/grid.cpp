#include <pencil/grid.hpp>

#include <cmath>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>

namespace pencil {

GridLine grid_line(const Grid& g, Orientation o, std::int64_t index) {
  const double base = o == Orientation::vertical ? g.re0() : g.im0();
  return {o, base + g.omega * static_cast<double>(index), index};
}

Grid random_grid(double omega, RngStream rng) {
  if (!(omega > 0.0)) throw std::invalid_argument("InvalidOmega: omega must be positive");
  const double cells = std::ceil(8.0 / omega);
  if (cells > 9e18) throw ParameterUnderflowError(
      "random_grid: omega = " + std::to_string(omega) + " yields a grid too fine to index");
  const auto s = static_cast<std::int64_t>(cells);
  // offset square clamped to side min(omega, 1) so the grid always covers B_3(0)
  const double side = std::min(omega, 1.0);
  const double ox = rng.next_uniform() * side;
  const double oy = rng.next_uniform() * side;
  return {Complex(-4.0 + ox, -4.0 + oy), omega, s, s};
}

BoxLocation box_of(const Grid& g, Complex z) {
  const double tol = 1e-14 * g.omega;
  const double fx = (z.real() - g.re0()) / g.omega;
  const double fy = (z.imag() - g.im0()) / g.omega;
  const auto near_line = [&](double f, std::int64_t s) {
    const double r = std::round(f);
    return std::abs(f - r) * g.omega <= tol && r >= 0.0 && r <= static_cast<double>(s);
  };
  if (near_line(fx, g.s1) || near_line(fy, g.s2)) {
    if (fx >= -0.5 && fx <= static_cast<double>(g.s1) + 0.5 && fy >= -0.5 &&
        fy <= static_cast<double>(g.s2) + 0.5)
      return {BoxLocation::Kind::on_line, 0, 0};
  }
  const double ix = std::floor(fx);
  const double iy = std::floor(fy);
  if (ix < 0 || iy < 0 || ix >= static_cast<double>(g.s1) || iy >= static_cast<double>(g.s2))
    return {BoxLocation::Kind::outside, 0, 0};
  return {BoxLocation::Kind::box, static_cast<std::int64_t>(ix), static_cast<std::int64_t>(iy)};
}

std::vector<GridLine> search_order(const Grid& g, Orientation o, std::int64_t cap) {
  const std::int64_t s = g.boxes(o);
  const std::int64_t count = s - 1;  // interior lines only
  if (count > cap)
    throw std::invalid_argument("search_order: " + std::to_string(count) +
                                " interior lines exceed the materialization cap");
  std::vector<GridLine> order;
  if (count <= 0) return order;
  order.reserve(static_cast<std::size_t>(count));
  std::deque<std::pair<std::int64_t, std::int64_t>> queue{{1, s - 1}};
  while (!queue.empty()) {
    auto [lo, hi] = queue.front();
    queue.pop_front();
    if (lo > hi) continue;
    const std::int64_t mid = lo + (hi - lo) / 2;
    order.push_back(grid_line(g, o, mid));
    queue.emplace_back(lo, mid - 1);
    queue.emplace_back(mid + 1, hi);
  }
  return order;
}

Grid half_grid(const Grid& g, const GridLine& line, Side side) {
  const std::int64_t s = g.boxes(line.orientation);
  if (line.index <= 0 || line.index >= s)
    throw std::invalid_argument("EmptyHalf: cannot split at a boundary line");
  Grid h = g;
  if (line.orientation == Orientation::vertical) {
    if (side == Side::left) {
      h.s1 = line.index;
    } else {
      h.z0 = Complex(line.coordinate, g.im0());
      h.s1 = g.s1 - line.index;
    }
  } else {
    if (side == Side::left) {
      h.s2 = line.index;
    } else {
      h.z0 = Complex(g.re0(), line.coordinate);
      h.s2 = g.s2 - line.index;
    }
  }
  return h;
}

LineSearchCursor::LineSearchCursor(const Grid& g, Orientation o)
    : g_(&g), o_(o), lo_(1), hi_(g.boxes(o) - 1) {}

GridLine LineSearchCursor::current() const {
  if (exhausted()) throw Error("LineSearchCursor: exhausted");
  return grid_line(*g_, o_, mid());
}

void LineSearchCursor::steer_low() { hi_ = mid() - 1; }

void LineSearchCursor::steer_high() { lo_ = mid() + 1; }

}  // namespace pencil

#include "patternfront/field.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <unordered_map>

#include "patternfront/errors.hpp"

namespace patternfront {

double Grid::wavenumber(int j) const {
  return 2.0 * std::numbers::pi / length * wave_index(j, n);
}

std::vector<double> Grid::points() const {
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) xs[j] = x(j);
  return xs;
}

FieldPair FieldPair::from_values(const Grid& grid, std::span<const double> u,
                                 std::span<const double> v) {
  if (static_cast<int>(u.size()) != grid.n || static_cast<int>(v.size()) != grid.n)
    throw DomainError("FieldPair::from_values: field size does not match grid");
  const auto& fft = real_fft(grid.n);
  FieldPair f;
  f.grid = grid;
  f.u_hat = fft.forward(u);
  f.v_hat = fft.forward(v);
  f.mean_v = f.v_hat[0].real() / grid.n;
  return f;
}

std::vector<double> FieldPair::u_values() const { return real_fft(grid.n).inverse(u_hat); }
std::vector<double> FieldPair::v_values() const { return real_fft(grid.n).inverse(v_hat); }

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

FieldPair make_grid(int n_grid, int n_periods, const ModelParams& params) {
  if (n_grid < 16 || !is_power_of_two(n_grid))
    throw DomainError("n_grid must be a power of two >= 16");
  if (n_periods < 1) throw DomainError("n_periods must be >= 1");
  FieldPair f;
  f.grid = Grid{n_grid, n_periods * 2.0 * std::numbers::pi / params.kc()};
  f.u_hat.assign(static_cast<std::size_t>(n_grid), cplx{});
  f.v_hat.assign(static_cast<std::size_t>(n_grid), cplx{});
  f.mean_v = 0.0;
  return f;
}

const RealFft& real_fft(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<RealFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<RealFft>(n);
  return *slot;
}

const ComplexFft& complex_fft(int n) {
  thread_local std::unordered_map<int, std::unique_ptr<ComplexFft>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<ComplexFft>(n);
  return *slot;
}

double hermitian_defect(std::span<const cplx> s) {
  const int n = static_cast<int>(s.size());
  double scale = 1.0, worst = 0.0;
  for (const auto& c : s) scale = std::max(scale, std::abs(c));
  for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(s[k] - std::conj(s[(n - k) % n])));
  return worst / scale;
}

}  // namespace patternfront

#ifndef WGLAB_SUMMATION_HPP
#define WGLAB_SUMMATION_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace wglab {

// Deterministic pairwise (cascade) summation.  Used for every norm/energy
// reduction so results are reproducible independent of evaluation order.
namespace detail {
template <typename T, typename F>
auto pairwise_reduce(const T* data, size_t n, F&& f) -> decltype(f(data[0])) {
  using R = decltype(f(data[0]));
  if (n == 0) return R{};
  if (n <= 8) {
    R s = f(data[0]);
    for (size_t i = 1; i < n; ++i) s += f(data[i]);
    return s;
  }
  size_t half = n / 2;
  return pairwise_reduce(data, half, f) + pairwise_reduce(data + half, n - half, f);
}
} // namespace detail

inline double pairwise_sum(const std::vector<double>& v) {
  return detail::pairwise_reduce(v.data(), v.size(), [](double x) { return x; });
}

inline double pairwise_sum_abs2(const std::vector<std::complex<double>>& v) {
  return detail::pairwise_reduce(v.data(), v.size(),
                                 [](const std::complex<double>& z) { return std::norm(z); });
}

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
  return detail::pairwise_reduce(v.data(), v.size(),
                                 [](const std::complex<double>& z) { return z; });
}

} // namespace wglab

#endif

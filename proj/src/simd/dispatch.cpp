#include <atomic>
#include <stdexcept>
#include <string>

#include "alcove/simd.hpp"

namespace alcove::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(ALCOVE_BUILD_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend detect() noexcept { return cpu_has_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<int>& override_slot() {
  static std::atomic<int> slot{-1};
  return slot;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("simd: input and output lengths differ");
}

}  // namespace

bool supported(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

std::string_view name(Backend b) noexcept { return b == Backend::avx2 ? "avx2" : "scalar"; }

Backend parse_backend(std::string_view s) {
  if (s == "scalar") return Backend::scalar;
  if (s == "avx2") return Backend::avx2;
  throw std::invalid_argument("unknown backend: " + std::string(s));
}

Backend active() noexcept {
  static const Backend best = detect();
  const int o = override_slot().load(std::memory_order_relaxed);
  return o < 0 ? best : static_cast<Backend>(o);
}

void set_active(Backend b) {
  if (!supported(b)) throw std::runtime_error("backend not supported on this CPU: " + std::string(name(b)));
  override_slot().store(static_cast<int>(b), std::memory_order_relaxed);
}

void reset_active() noexcept { override_slot().store(-1, std::memory_order_relaxed); }

double reflect_scan(Backend b, std::span<const double> in, std::span<double> out, double step,
                    bool wall_one, double factor) {
  check_sizes(in.size(), out.size());
#if defined(ALCOVE_BUILD_AVX2)
  if (b == Backend::avx2)
    return detail::reflect_scan_avx2(in.data(), out.data(), in.size(), step, wall_one, factor);
#endif
  (void)b;
  return detail::reflect_scan_scalar(in.data(), out.data(), in.size(), step, wall_one, factor);
}

double reflect_scan(std::span<const double> in, std::span<double> out, double step, bool wall_one,
                    double factor) {
  return reflect_scan(active(), in, out, step, wall_one, factor);
}

double running_min(Backend b, std::span<const double> in, double step, bool wall_one) {
#if defined(ALCOVE_BUILD_AVX2)
  if (b == Backend::avx2) return detail::running_min_avx2(in.data(), in.size(), step, wall_one);
#endif
  (void)b;
  return detail::running_min_scalar(in.data(), in.size(), step, wall_one);
}

double running_min(std::span<const double> in, double step, bool wall_one) {
  return running_min(active(), in, step, wall_one);
}

void sine_series(Backend b, std::span<const double> coeffs, std::span<const double> cos_theta,
                 std::span<const double> sin_theta, std::span<double> out) {
  check_sizes(cos_theta.size(), out.size());
  check_sizes(sin_theta.size(), out.size());
#if defined(ALCOVE_BUILD_AVX2)
  if (b == Backend::avx2) {
    detail::sine_series_avx2(coeffs.data(), coeffs.size(), cos_theta.data(), sin_theta.data(),
                             out.data(), out.size());
    return;
  }
#endif
  (void)b;
  detail::sine_series_scalar(coeffs.data(), coeffs.size(), cos_theta.data(), sin_theta.data(),
                             out.data(), out.size());
}

void sine_series(std::span<const double> coeffs, std::span<const double> cos_theta,
                 std::span<const double> sin_theta, std::span<double> out) {
  sine_series(active(), coeffs, cos_theta, sin_theta, out);
}

}  // namespace alcove::simd

#pragma once

#include <span>
#include <string_view>

namespace alcove::simd {

enum class Backend { scalar, avx2 };

bool supported(Backend b) noexcept;
std::string_view name(Backend b) noexcept;
// Throws std::invalid_argument for unknown names.
Backend parse_backend(std::string_view s);

// Best supported backend unless overridden.
Backend active() noexcept;
// Throws std::runtime_error if b is not supported on this CPU.
void set_active(Backend b);
void reset_active() noexcept;

// Running-minimum reflection. With g_j = in[j] (wall_one) or g_j = j*step - in[j]
// (otherwise) and m_j = min(0, g_0, ..., g_j):
//   out[j] = in[j] - factor*m_j   (wall_one)
//   out[j] = in[j] + factor*m_j   (otherwise)
// Returns m at the last node. in and out may alias.
double reflect_scan(std::span<const double> in, std::span<double> out, double step, bool wall_one,
                    double factor);
double reflect_scan(Backend b, std::span<const double> in, std::span<double> out, double step,
                    bool wall_one, double factor);

// min(0, g_0, ..., g_{n-1}) without writing the reflected path.
double running_min(std::span<const double> in, double step, bool wall_one);
double running_min(Backend b, std::span<const double> in, double step, bool wall_one);

// out[i] = sum_{n=1..N} coeffs[n-1] sin(n theta_i), by Clenshaw recurrence,
// given cos_theta[i] and sin_theta[i].
void sine_series(std::span<const double> coeffs, std::span<const double> cos_theta,
                 std::span<const double> sin_theta, std::span<double> out);
void sine_series(Backend b, std::span<const double> coeffs, std::span<const double> cos_theta,
                 std::span<const double> sin_theta, std::span<double> out);

namespace detail {
double reflect_scan_scalar(const double* in, double* out, std::size_t n, double step,
                           bool wall_one, double factor);
double running_min_scalar(const double* in, std::size_t n, double step, bool wall_one);
void sine_series_scalar(const double* c, std::size_t nc, const double* cs, const double* sn,
                        double* out, std::size_t n);
#if defined(ALCOVE_BUILD_AVX2)
double reflect_scan_avx2(const double* in, double* out, std::size_t n, double step, bool wall_one,
                         double factor);
double running_min_avx2(const double* in, std::size_t n, double step, bool wall_one);
void sine_series_avx2(const double* c, std::size_t nc, const double* cs, const double* sn,
                      double* out, std::size_t n);
#endif
}  // namespace detail

}  // namespace alcove::simd

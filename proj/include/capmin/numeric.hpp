#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

namespace capmin {

/// Error raised for malformed input (bad parameters, empty sets, invalid
/// configurations). Numerical breakdowns use NumericalError.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using cplx = std::complex<double>;

/// Working precision of the rational-approximation solvers.
enum class Precision { binary64, extended };

inline std::string_view to_string(Precision p) {
    return p == Precision::binary64 ? "double" : "extended";
}

inline Precision precision_from_string(std::string_view s) {
    if (s == "double" || s == "binary64") return Precision::binary64;
    if (s == "extended") return Precision::extended;
    throw DomainError("unknown precision '" + std::string(s) + "'");
}

namespace mp = boost::multiprecision;

/// 512-bit significand. Hankel and divided-difference systems at n = 20
/// with nodes on [-64, 64] lose roughly 350 bits.
inline constexpr unsigned extended_bits = 512;

using ext_real = mp::number<mp::cpp_bin_float<extended_bits, mp::digit_base_2>, mp::et_off>;
using ext_complex =
    mp::number<mp::complex_adaptor<mp::cpp_bin_float<extended_bits, mp::digit_base_2>>, mp::et_off>;

template <class Real>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    using complex_type = std::complex<double>;
    static constexpr Precision precision = Precision::binary64;
};

template <>
struct scalar_traits<ext_real> {
    using complex_type = ext_complex;
    static constexpr Precision precision = Precision::extended;
};

template <class Real>
using complex_of = typename scalar_traits<Real>::complex_type;

template <class Real>
Real pi_v() {
    if constexpr (std::is_same_v<Real, double>) {
        return std::numbers::pi;
    } else {
        return boost::math::constants::pi<Real>();
    }
}

template <class Real>
Real epsilon_v() {
    return std::numeric_limits<Real>::epsilon();
}

inline double to_double(double x) { return x; }
inline double to_double(const ext_real& x) { return static_cast<double>(x); }

inline cplx to_cplx(const cplx& z) { return z; }
inline cplx to_cplx(const ext_complex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class Real>
complex_of<Real> from_cplx(const cplx& z) {
    return complex_of<Real>(Real(z.real()), Real(z.imag()));
}

}  // namespace capmin

#pragma once

#include <complex>

#include "polaron/numerics/quadrature.hpp"
#include "polaron/params.hpp"

namespace polaron {

enum class SpectralKind {
  BecExact,         // full Bogoliubov form, validation only
  BecLowFrequency,  // m_I tau_d^d omega^(d+2) below the cutoff
  Ohmic             // per-axis m_I gamma omega below the cutoff
};

/// Spectral-density family with a sharp ultraviolet cutoff Theta(Lambda - omega).
///
/// The scalar density J_d is the trace of the spectral tensor; the tensor is
/// (J_d / d) times the identity, so every per-axis quantity below uses J_d / d.
/// The Ohmic reference is specified per axis: gamma is the damping rate of
/// one coordinate, J^xx = m_I gamma omega, and its trace is d m_I gamma omega.
struct SpectralModel {
  SpectralKind kind = SpectralKind::BecLowFrequency;
  int dimension = 1;
  double cutoff = 0.0;         // Lambda [rad/s]
  double tau_pow_d = 0.0;      // tau_d^d [s^d], BEC kinds
  double gamma = 0.0;          // [1/s], Ohmic kind
  double impurity_mass = 0.0;  // [kg]

  static SpectralModel bec(const DerivedBath& bath,
                           SpectralKind kind = SpectralKind::BecLowFrequency);
  static SpectralModel ohmic(int dimension, double cutoff, double gamma, double impurity_mass);

  /// 1 + (Lambda tau)^d / d^2, the low-frequency mass renormalization.
  double alpha() const;
};

/// Scalar J_d(omega). BecExact is returned without cutoff (it is the
/// uncut Bogoliubov expression); the other kinds vanish above Lambda.
double spectral_scalar(const SpectralModel& model, double omega);

/// Tensor component J^{ij}; off-diagonal components are identically zero.
double spectral_component(const SpectralModel& model, double omega, int i, int j);
double spectral_component_xx(const SpectralModel& model, double omega);

/// Same density rebuilt from the Bogoliubov mode sum: root k_omega of the
/// dispersion, Jacobian 1/|d omega_k / dk| and the d-dimensional angular
/// measure. Independent of spectral_scalar.
double spectral_from_modes(const DerivedBath& bath, double omega);

/// Real part of the bath correlation, nu^xx(tau) = int_0^Lambda J^xx coth(hbar w / 2 k_B T) cos(w tau) dw.
/// T = 0 replaces coth by 1.
double noise_kernel(const SpectralModel& model, double tau, double temperature,
                    const numerics::QuadratureSpec& spec = {});

/// lambda^xx(tau) = int_0^Lambda J^xx sin(w tau) dw.
double dissipation_kernel(const SpectralModel& model, double tau,
                          const numerics::QuadratureSpec& spec = {});

/// Gamma^xx(t) = (1/m_I) int_0^Lambda J^xx / w cos(w t) dw.
double damping_kernel_time(const SpectralModel& model, double t,
                           const numerics::QuadratureSpec& spec = {});

/// Gamma^xx(0) in closed form for the monomial kinds.
double damping_kernel_at_zero(const SpectralModel& model);

enum class LaplacePath {
  Closed,     // hypergeometric closed forms (d = 1, 2, 3) and arctan for Ohmic
  Quadrature  // (1/m_I) S int_0^Lambda J^xx / w / (S^2 + w^2) dw
};

/// Laplace transform of Gamma^xx at complex S with Re S > 0.
std::complex<double> damping_laplace(const SpectralModel& model, std::complex<double> s,
                                     LaplacePath path = LaplacePath::Closed);

/// 2F1(1, (d+2)/2; (d+4)/2; -w^2) through its closed forms; w = Lambda / S.
std::complex<double> damping_hypergeometric(int dimension, std::complex<double> w);

struct FourierDamping {
  double xi;     // Re L[Gamma](-i omega + 0+)
  double theta;  // Im L[Gamma](-i omega + 0+)
};

enum class FourierMethod {
  PrincipalValue,  // PV quadrature with singularity subtraction
  ClosedForm       // continuation of the closed Laplace forms (monomial kinds)
};

/// Boundary value of the damping transform on the imaginary axis,
/// S = -i omega + 0+. omega within 1e-9 Lambda of the cutoff is rejected.
FourierDamping damping_fourier(const SpectralModel& model, double omega,
                               FourierMethod method = FourierMethod::PrincipalValue);

/// Thermal factor coth(hbar omega / 2 k_B T); 1 at T = 0.
double thermal_factor(double omega, double temperature);

/// J^xx(omega) coth(hbar omega / 2 k_B T) with its finite omega -> 0 limit.
double thermal_spectral_xx(const SpectralModel& model, double omega, double temperature);

namespace detail {
/// damping_fourier without the cutoff-edge guard, for use inside integrands.
FourierDamping damping_fourier_unchecked(const SpectralModel& model, double omega,
                                         FourierMethod method);
/// Same, with the distance to the cutoff gap = Lambda - omega supplied
/// separately so that the logarithm at the cutoff keeps full precision.
FourierDamping damping_fourier_gap(const SpectralModel& model, double omega, double gap,
                                   FourierMethod method);
}  // namespace detail

}  // namespace polaron

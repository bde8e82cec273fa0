// master_equation.hpp — Caldeira-Leggett and Lindblad generators as superoperators
//
// Density matrices are vectorized by column stacking: vec(rho)[i + N j] = rho(i, j),
// so vec(A rho B) = (B^T kron A) vec(rho). Time is measured in 1/omega0 and all
// rates in omega0.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "squid/hamiltonian.hpp"
#include "squid/operators.hpp"
#include "squid/params.hpp"

namespace squid {

using SuperMatrix = Eigen::MatrixXcd;

enum class GeneratorKind { cl_first, cl_second, lindblad_first, lindblad_second, custom };

std::string to_string(GeneratorKind kind);

struct Superoperator {
    SuperMatrix matrix;
    GeneratorKind kind{GeneratorKind::custom};

    Index basis_size() const;
    Operator apply(const Operator& rho) const;
};

Eigen::VectorXcd vectorize(const Operator& rho);
Operator unvectorize(const Eigen::VectorXcd& v, Index n);

struct LindbladSpec {
    Operator hamiltonian;
    std::vector<Operator> lindblads;
};

// Split of the (1 - xi^2)[X,[X,.]] noise between the two second-order
// Lindblad operators. noise_fraction is the share carried by L2; the reported
// weighting is zeta = 1 - noise_fraction, so zeta = 1 - xi reproduces the
// closed-form second-order operators.
class ZetaSplit {
public:
    static ZetaSplit from_zeta(double zeta);
    static ZetaSplit from_noise_fraction(double fraction);
    static ZetaSplit one_minus_xi(double xi) { return from_noise_fraction(xi); }

    double zeta() const { return 1.0 - fraction_; }
    double noise_fraction() const { return fraction_; }

private:
    explicit ZetaSplit(double fraction) : fraction_(fraction) {}
    double fraction_;
};

struct GeneratorOptions {
    // Absorb the bath-induced inductance shift into H (first/second order
    // lambda for the matching generator). Off: H uses the circuit L as given.
    bool renormalize{false};
    bool include_squeeze{true};
    SinTermCoefficient sin_coefficient{SinTermCoefficient::consistent};
    std::optional<double> sin_coefficient_value; // overrides sin_coefficient when set
    // Debug fault injection for the verification suite: flips the sign of the
    // imaginary P coefficient in the first-order Lindblad operator.
    bool flip_p_sign{false};
};

// Superoperator building blocks (all N^2 x N^2).
namespace super {
SuperMatrix left(const Operator& a);                          // rho -> A rho
SuperMatrix right(const Operator& b);                         // rho -> rho B
SuperMatrix sandwich(const Operator& a, const Operator& b);   // rho -> A rho B
SuperMatrix commutator(const Operator& a);                    // rho -> [A, rho]
SuperMatrix double_commutator(const Operator& a, const Operator& b);    // rho -> [A,[B,rho]]
SuperMatrix commutator_anticommutator(const Operator& a, const Operator& b); // rho -> [A,{B,rho}]
} // namespace super

Superoperator build_cl_first(const DerivedScales& scales, double gamma, double flux_fraction, Index n,
                             const GeneratorOptions& options = {});
Superoperator build_cl_second(const DerivedScales& scales, double gamma, double flux_fraction, Index n,
                              const GeneratorOptions& options = {});

LindbladSpec build_lindblad_first(const DerivedScales& scales, double gamma, double flux_fraction, Index n,
                                  const GeneratorOptions& options = {});
LindbladSpec build_lindblad_second(const DerivedScales& scales, double gamma, double flux_fraction,
                                   const ZetaSplit& zeta, Index n, const GeneratorOptions& options = {});

// -i[H, .] + sum_j (L_j . L_j^dag - {L_j^dag L_j, .}/2)
Superoperator assemble_liouvillian(const LindbladSpec& spec, GeneratorKind kind = GeneratorKind::custom);

// Direct (non-superoperator) evaluation of the Lindblad right-hand side.
Operator lindblad_rhs(const LindbladSpec& spec, const Operator& rho);

struct DefectTerm {
    std::string name;
    cd coefficient;
};

// Least-squares fit of Delta = (Lindblad generator) - (Caldeira-Leggett generator)
// against dissipator-form terms: "PP" = -1/2 [P,[P,.]], "SS" = -1/2 [S,[S,.]],
// "PS" = -1/2 ([P,[S,.]] + [S,[P,.]]) with S the sin operator (order 2 only).
// Coefficients are those multiplying each term; residual is relative to |Delta|.
// The fit uses the action on states supported on the leading N - 2 levels,
// where the truncated X and P obey [X, P] = i exactly.
struct DefectReport {
    int order{1};
    std::vector<DefectTerm> terms;
    double defect_norm{0.0};
    double relative_residual{0.0};

    // Order 2 only: the symmetrized X sin(.) Hamiltonian coefficient.
    double printed_sin_coefficient{0.0};
    double used_sin_coefficient{0.0};
    double fitted_sin_coefficient{0.0};     // minimizer of the residual
    double residual_at_fitted{0.0};         // residual with the Hamiltonian term refitted
    bool printed_coefficient_minimizes{false};
};

DefectReport verify_lindblad_consistency(int order, const DerivedScales& scales, double gamma,
                                         double flux_fraction, const ZetaSplit& zeta, Index n,
                                         const GeneratorOptions& options = {});

// Relative residual of the order-2 dissipator fit when the Lindblad
// Hamiltonian carries the given sin-term coefficient (used for 1-D scans).
double second_order_defect_residual(const DerivedScales& scales, double gamma, double flux_fraction,
                                    const ZetaSplit& zeta, Index n, double sin_coefficient,
                                    const GeneratorOptions& options = {});

} // namespace squid

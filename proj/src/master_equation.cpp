#include "squid/master_equation.hpp"

#include <cmath>
#include <stdexcept>

#include "squid/bch.hpp"

namespace squid {

std::string to_string(GeneratorKind kind)
{
    switch (kind) {
    case GeneratorKind::cl_first: return "CL1";
    case GeneratorKind::cl_second: return "CL2";
    case GeneratorKind::lindblad_first: return "Lind1";
    case GeneratorKind::lindblad_second: return "Lind2";
    case GeneratorKind::custom: return "custom";
    }
    return "unknown";
}

Index Superoperator::basis_size() const
{
    return static_cast<Index>(std::llround(std::sqrt(static_cast<double>(matrix.rows()))));
}

Operator Superoperator::apply(const Operator& rho) const
{
    return unvectorize(matrix * vectorize(rho), rho.rows());
}

Eigen::VectorXcd vectorize(const Operator& rho)
{
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

Operator unvectorize(const Eigen::VectorXcd& v, Index n)
{
    if (v.size() != n * n) throw SizeError("unvectorize: vector length is not N^2");
    return Eigen::Map<const Operator>(v.data(), n, n);
}

namespace {

// Accumulators on an existing N^2 x N^2 matrix; block (j, l) of the
// column-stacked representation of rho -> A rho B is B(l, j) * A.
void add_left(SuperMatrix& g, cd c, const Operator& a)
{
    const Index n = a.rows();
    for (Index j = 0; j < n; ++j) g.block(j * n, j * n, n, n) += c * a;
}

void add_right(SuperMatrix& g, cd c, const Operator& b)
{
    const Index n = b.rows();
    for (Index l = 0; l < n; ++l)
        for (Index j = 0; j < n; ++j) {
            const cd w = c * b(l, j);
            if (w == cd(0.0)) continue;
            g.block(j * n, l * n, n, n).diagonal().array() += w;
        }
}

void add_sandwich(SuperMatrix& g, cd c, const Operator& a, const Operator& b)
{
    const Index n = a.rows();
    for (Index l = 0; l < n; ++l)
        for (Index j = 0; j < n; ++j) {
            const cd w = c * b(l, j);
            if (w == cd(0.0)) continue;
            g.block(j * n, l * n, n, n) += w * a;
        }
}

// c [A, .]
void add_commutator(SuperMatrix& g, cd c, const Operator& a)
{
    add_left(g, c, a);
    add_right(g, -c, a);
}

// c [A,[B, .]] = c (AB. - A.B - B.A + .BA)
void add_double_commutator(SuperMatrix& g, cd c, const Operator& a, const Operator& b)
{
    add_left(g, c, a * b);
    add_sandwich(g, -c, a, b);
    add_sandwich(g, -c, b, a);
    add_right(g, c, b * a);
}

// c [A,{B, .}] = c (AB. + A.B - B.A - .BA)
void add_commutator_anticommutator(SuperMatrix& g, cd c, const Operator& a, const Operator& b)
{
    add_left(g, c, a * b);
    add_sandwich(g, c, a, b);
    add_sandwich(g, -c, b, a);
    add_right(g, -c, b * a);
}

SuperMatrix zero_super(Index n) { return SuperMatrix::Zero(n * n, n * n); }

DerivedScales with_gamma(DerivedScales scales, double gamma)
{
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ParameterError("gamma", "must be finite and non-negative");
    scales.gamma_ratio = gamma;
    return scales;
}

Operator system_hamiltonian(const DerivedScales& scales, double flux_fraction, Index n, int order,
                            const GeneratorOptions& options, bool lindblad_completed)
{
    HamiltonianConfig cfg;
    cfg.flux_fraction = flux_fraction;
    cfg.renormalization = options.renormalize
                              ? (order == 1 ? Renormalization::first : Renormalization::second)
                              : Renormalization::none;
    cfg.include_squeeze = lindblad_completed && options.include_squeeze;
    return build_system_hamiltonian(scales, cfg, n);
}

double resolved_sin_coefficient(const DerivedScales& scales, const GeneratorOptions& options)
{
    return options.sin_coefficient_value ? *options.sin_coefficient_value
                                         : sin_term_coefficient(scales, options.sin_coefficient);
}

} // namespace

namespace super {

SuperMatrix left(const Operator& a)
{
    auto g = zero_super(a.rows());
    add_left(g, 1.0, a);
    return g;
}

SuperMatrix right(const Operator& b)
{
    auto g = zero_super(b.rows());
    add_right(g, 1.0, b);
    return g;
}

SuperMatrix sandwich(const Operator& a, const Operator& b)
{
    auto g = zero_super(a.rows());
    add_sandwich(g, 1.0, a, b);
    return g;
}

SuperMatrix commutator(const Operator& a)
{
    auto g = zero_super(a.rows());
    add_commutator(g, 1.0, a);
    return g;
}

SuperMatrix double_commutator(const Operator& a, const Operator& b)
{
    auto g = zero_super(a.rows());
    add_double_commutator(g, 1.0, a, b);
    return g;
}

SuperMatrix commutator_anticommutator(const Operator& a, const Operator& b)
{
    auto g = zero_super(a.rows());
    add_commutator_anticommutator(g, 1.0, a, b);
    return g;
}

} // namespace super

ZetaSplit ZetaSplit::from_zeta(double zeta)
{
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw std::invalid_argument("ZetaSplit: zeta must lie in [0, 1]");
    return ZetaSplit(1.0 - zeta);
}

ZetaSplit ZetaSplit::from_noise_fraction(double fraction)
{
    if (!(fraction >= 0.0 && fraction <= 1.0))
        throw std::invalid_argument("ZetaSplit: noise fraction must lie in [0, 1]");
    return ZetaSplit(fraction);
}

// -i[H,.] - i g [X,{P,.}] - (g/2)[X,[X,.]] + (g xi/2)[X,[P,.]]
Superoperator build_cl_first(const DerivedScales& scales_in, double gamma, double flux_fraction, Index n,
                             const GeneratorOptions& options)
{
    const auto scales = with_gamma(scales_in, gamma);
    const auto q = build_xp(n);
    const Operator h = system_hamiltonian(scales, flux_fraction, n, 1, options, false);
    const double xi = scales.xi;
    const cd i(0.0, 1.0);

    Superoperator g{zero_super(n), GeneratorKind::cl_first};
    add_commutator(g.matrix, -i, h);
    add_commutator_anticommutator(g.matrix, -i * gamma, q.x, q.p);
    add_double_commutator(g.matrix, -0.5 * gamma, q.x, q.x);
    add_double_commutator(g.matrix, 0.5 * gamma * xi, q.x, q.p);
    return g;
}

// Second order adds the sin(.) dissipation and cutoff terms and scales the
// X noise by (1 - xi^2).
Superoperator build_cl_second(const DerivedScales& scales_in, double gamma, double flux_fraction, Index n,
                              const GeneratorOptions& options)
{
    const auto scales = with_gamma(scales_in, gamma);
    const auto q = build_xp(n);
    const Operator s = sin_operator(scales, flux_fraction, n);
    const Operator h = system_hamiltonian(scales, flux_fraction, n, 2, options, false);
    const double xi = scales.xi;
    const double kappa = scales.sin_weight();
    const cd i(0.0, 1.0);

    Superoperator g{zero_super(n), GeneratorKind::cl_second};
    add_commutator(g.matrix, -i, h);
    add_commutator_anticommutator(g.matrix, -i * gamma, q.x, q.p);
    add_commutator_anticommutator(g.matrix, -i * gamma * xi * kappa, q.x, s);
    add_double_commutator(g.matrix, -0.5 * gamma * (1.0 - xi * xi), q.x, q.x);
    add_double_commutator(g.matrix, 0.5 * gamma * xi, q.x, q.p);
    add_double_commutator(g.matrix, 0.5 * gamma * xi * xi * kappa, q.x, s);
    return g;
}

// L = sqrt(g) [X + (i - xi/2) P], H = H_S + (g/2)(XP + PX).
LindbladSpec build_lindblad_first(const DerivedScales& scales_in, double gamma, double flux_fraction, Index n,
                                  const GeneratorOptions& options)
{
    const auto scales = with_gamma(scales_in, gamma);
    const auto q = build_xp(n);
    const double im = options.flip_p_sign ? -1.0 : 1.0;
    const cd p_weight(-0.5 * scales.xi, im);

    LindbladSpec spec;
    spec.hamiltonian = system_hamiltonian(scales, flux_fraction, n, 1, options, true);
    spec.lindblads.push_back(std::sqrt(gamma) * (q.x + p_weight * q.p));
    return spec;
}

// L1 = sqrt(g) [a1 X + (i - xi/2)/a1 P],           a1 = sqrt((1 - f)(1 - xi^2))
// L2 = sqrt(g) [a2 X + xi (i - xi/2)/a2 kappa S],  a2 = sqrt(f (1 - xi^2))
// with f the noise fraction carried by L2; f = xi gives the closed form.
LindbladSpec build_lindblad_second(const DerivedScales& scales_in, double gamma, double flux_fraction,
                                   const ZetaSplit& zeta, Index n, const GeneratorOptions& options)
{
    const auto scales = with_gamma(scales_in, gamma);
    const double xi = scales.xi;
    const double f = zeta.noise_fraction();
    if (!(xi < 1.0)) throw ParameterError("xi", "second-order Lindblad operators require xi < 1");
    const bool vanishing_l2 = (xi == 0.0 && f == 0.0);
    if (!vanishing_l2 && !(f > 0.0 && f < 1.0))
        throw std::invalid_argument("build_lindblad_second: degenerate zeta split (zeta = " +
                                    std::to_string(zeta.zeta()) + "); zeta must lie strictly inside (0, 1)");

    const auto q = build_xp(n);
    const double root_g = std::sqrt(gamma);
    const double one_minus_xi2 = 1.0 - xi * xi;
    const cd shifted_i(-0.5 * xi, 1.0);

    LindbladSpec spec;
    spec.hamiltonian = system_hamiltonian(scales, flux_fraction, n, 2, options, true);
    const double a1 = std::sqrt((1.0 - f) * one_minus_xi2);
    spec.lindblads.push_back(root_g * (a1 * q.x + (shifted_i / a1) * q.p));

    if (!vanishing_l2) {
        const Operator s = sin_operator(scales, flux_fraction, n);
        spec.hamiltonian += (0.5 * resolved_sin_coefficient(scales, options)) * anticommutator(q.x, s);
        const double a2 = std::sqrt(f * one_minus_xi2);
        spec.lindblads.push_back(root_g * (a2 * q.x + (xi * scales.sin_weight() / a2) * shifted_i * s));
    }
    return spec;
}

Superoperator assemble_liouvillian(const LindbladSpec& spec, GeneratorKind kind)
{
    const Index n = spec.hamiltonian.rows();
    if (!is_hermitian(spec.hamiltonian, 1e-10))
        throw DomainError("assemble_liouvillian: Hamiltonian is not Hermitian");
    if (spec.lindblads.empty()) throw std::invalid_argument("assemble_liouvillian: no Lindblad operators");

    Superoperator g{zero_super(n), kind};
    add_commutator(g.matrix, cd(0.0, -1.0), spec.hamiltonian);
    for (const auto& l : spec.lindblads) {
        if (l.rows() != n || l.cols() != n) throw SizeError("assemble_liouvillian: Lindblad dimension mismatch");
        const Operator ldl = l.adjoint() * l;
        add_sandwich(g.matrix, 1.0, l, l.adjoint());
        add_left(g.matrix, -0.5, ldl);
        add_right(g.matrix, -0.5, ldl);
    }
    return g;
}

Operator lindblad_rhs(const LindbladSpec& spec, const Operator& rho)
{
    const cd i(0.0, 1.0);
    Operator out = -i * commutator(spec.hamiltonian, rho);
    for (const auto& l : spec.lindblads) {
        const Operator ldl = l.adjoint() * l;
        out += l * rho * l.adjoint() - 0.5 * anticommutator(ldl, rho);
    }
    return out;
}

namespace {

struct FitResult {
    Eigen::VectorXcd coefficients;
    double relative_residual;
    double defect_norm;
};

// Columns of states supported on the leading N - 2 levels. On those states
// every product of two ladder-type operators is exact in the truncated basis,
// so [X, P] = i holds and the defect identities are free of truncation error.
std::vector<Index> exact_support_columns(Index n)
{
    std::vector<Index> cols;
    for (Index j = 0; j + 2 < n; ++j)
        for (Index i = 0; i + 2 < n; ++i) cols.push_back(i + n * j);
    return cols;
}

FitResult least_squares_fit(const SuperMatrix& delta_full, const std::vector<const SuperMatrix*>& basis_full)
{
    const Index n = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(delta_full.rows()))));
    const auto cols = exact_support_columns(n);
    const SuperMatrix delta = delta_full(Eigen::all, cols);
    std::vector<SuperMatrix> basis;
    for (const auto* b : basis_full) basis.push_back((*b)(Eigen::all, cols));

    const Index k = static_cast<Index>(basis.size());
    Eigen::MatrixXcd gram(k, k);
    Eigen::VectorXcd rhs(k);
    for (Index a = 0; a < k; ++a) {
        for (Index b = 0; b < k; ++b) gram(a, b) = basis[a].cwiseProduct(basis[b].conjugate()).sum();
        rhs(a) = delta.cwiseProduct(basis[a].conjugate()).sum();
    }
    // gram(a,b) = <B_b, B_a>; solve sum_b <B_b,B_a> c_b = <Delta, B_a>.
    Eigen::VectorXcd c = gram.transpose().colPivHouseholderQr().solve(rhs);
    SuperMatrix r = delta;
    for (Index a = 0; a < k; ++a) r -= c(a) * basis[a];
    const double norm = delta.norm();
    return {c, norm > 0.0 ? r.norm() / norm : r.norm(), norm};
}

SuperMatrix dissipator_term(const Operator& a, const Operator& b)
{
    SuperMatrix g = SuperMatrix::Zero(a.rows() * a.rows(), a.rows() * a.rows());
    if (&a == &b) {
        add_double_commutator(g, -0.5, a, a);
    } else {
        add_double_commutator(g, -0.5, a, b);
        add_double_commutator(g, -0.5, b, a);
    }
    return g;
}

} // namespace

double second_order_defect_residual(const DerivedScales& scales, double gamma, double flux_fraction,
                                    const ZetaSplit& zeta, Index n, double sin_coefficient,
                                    const GeneratorOptions& options)
{
    GeneratorOptions opts = options;
    opts.sin_coefficient_value = sin_coefficient;
    const auto lind = assemble_liouvillian(build_lindblad_second(scales, gamma, flux_fraction, zeta, n, opts));
    const auto cl = build_cl_second(scales, gamma, flux_fraction, n, opts);
    const SuperMatrix delta = lind.matrix - cl.matrix;

    const auto q = build_xp(n);
    const Operator s = sin_operator(with_gamma(scales, gamma), flux_fraction, n);
    const SuperMatrix pp = dissipator_term(q.p, q.p);
    const SuperMatrix ss = dissipator_term(s, s);
    const SuperMatrix ps = dissipator_term(q.p, s);
    return least_squares_fit(delta, {&pp, &ss, &ps}).relative_residual;
}

DefectReport verify_lindblad_consistency(int order, const DerivedScales& scales_in, double gamma,
                                         double flux_fraction, const ZetaSplit& zeta, Index n,
                                         const GeneratorOptions& options)
{
    if (order != 1 && order != 2) throw std::invalid_argument("verify_lindblad_consistency: order must be 1 or 2");
    const auto scales = with_gamma(scales_in, gamma);
    const auto q = build_xp(n);
    DefectReport report;
    report.order = order;

    if (order == 1) {
        const auto lind = assemble_liouvillian(build_lindblad_first(scales, gamma, flux_fraction, n, options));
        const auto cl = build_cl_first(scales, gamma, flux_fraction, n, options);
        const SuperMatrix delta = lind.matrix - cl.matrix;
        const SuperMatrix pp = dissipator_term(q.p, q.p);
        const auto fit = least_squares_fit(delta, {&pp});
        report.terms.push_back({"PP", fit.coefficients(0)});
        report.defect_norm = fit.defect_norm;
        report.relative_residual = fit.relative_residual;
        return report;
    }

    const auto lind = assemble_liouvillian(build_lindblad_second(scales, gamma, flux_fraction, zeta, n, options));
    const auto cl = build_cl_second(scales, gamma, flux_fraction, n, options);
    const SuperMatrix delta = lind.matrix - cl.matrix;

    const Operator s = sin_operator(scales, flux_fraction, n);
    const SuperMatrix pp = dissipator_term(q.p, q.p);
    const SuperMatrix ss = dissipator_term(s, s);
    const SuperMatrix ps = dissipator_term(q.p, s);
    const auto fit = least_squares_fit(delta, {&pp, &ss, &ps});
    report.terms = {{"PP", fit.coefficients(0)}, {"SS", fit.coefficients(1)}, {"PS", fit.coefficients(2)}};
    report.defect_norm = fit.defect_norm;
    report.relative_residual = fit.relative_residual;

    // The generator is affine in the Hamiltonian coefficient h of T = (XS+SX)/2:
    // Delta(h) = (h - h*) (-i[T, .]) + dissipator terms, so refitting with
    // -i[T, .] in the basis locates the residual minimizer h*.
    SuperMatrix hamiltonian_term = SuperMatrix::Zero(n * n, n * n);
    add_commutator(hamiltonian_term, cd(0.0, -1.0), 0.5 * anticommutator(q.x, s));
    const auto full = least_squares_fit(delta, {&pp, &ss, &ps, &hamiltonian_term});

    report.printed_sin_coefficient = sin_term_coefficient(scales, SinTermCoefficient::printed);
    report.used_sin_coefficient = resolved_sin_coefficient(scales, options);
    report.fitted_sin_coefficient = report.used_sin_coefficient - full.coefficients(3).real();
    report.residual_at_fitted = full.relative_residual;
    const double scale = std::max({std::abs(report.printed_sin_coefficient),
                                   std::abs(report.fitted_sin_coefficient), 1e-300});
    report.printed_coefficient_minimizes =
        std::abs(report.printed_sin_coefficient - report.fitted_sin_coefficient) <= 1e-6 * scale;
    return report;
}

} // namespace squid

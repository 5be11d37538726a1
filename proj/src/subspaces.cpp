/*
 * Copyright 2026 The bipencil Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "bipencil/subspaces.hpp"

#include "bipencil/errors.hpp"

#include <algorithm>

namespace bipencil {

namespace {

void flatten_as_column(const QMatrix& m, QMatrix& columns, std::size_t col)
{
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            columns(i * m.cols() + j, col) = m(i, j);
}

QMatrix restrict_form(const QMatrix& form, const QMatrix& rows)
{
    return rows * form * rows.transpose();
}

/// Kernel {x : M x = 0} as a subspace.
Subspace column_kernel(const QMatrix& m)
{
    return Subspace(m.cols(), kernel_basis(m));
}

/// First rational in 0, 1, -1, 2, -2, ... satisfying pred.
template <typename Pred>
Rational first_sample(Pred pred)
{
    for (long k = 0;; ++k) {
        const Rational v(k % 2 == 0 ? -(k / 2) : (k + 1) / 2);
        if (pred(v))
            return v;
    }
}

} // namespace

Polynomial minimal_polynomial(const QMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0)
        return Polynomial(std::vector<Rational>{Rational(1)}, "t");
    QMatrix columns(n * n, n + 1);
    QMatrix power = QMatrix::identity(n);
    for (std::size_t k = 0; k <= n; ++k) {
        flatten_as_column(power, columns, k);
        QMatrix leading(n * n, k + 1);
        for (std::size_t i = 0; i < n * n; ++i)
            for (std::size_t j = 0; j <= k; ++j)
                leading(i, j) = columns(i, j);
        const QMatrix ker = kernel_basis(leading);
        if (ker.rows() > 0) {
            std::vector<Rational> c(ker.row(0).begin(), ker.row(0).end());
            return Polynomial(std::move(c), "t").monic();
        }
        power = power * m;
    }
    throw ConsistencyError("minimal polynomial exceeded the matrix size");
}

QMatrix evaluate_polynomial(const Polynomial& f, const QMatrix& m)
{
    const std::size_t n = m.rows();
    QMatrix result(n, n);
    const auto& c = f.coefficients();
    for (std::size_t k = c.size(); k-- > 0;) {
        result = result * m;
        for (std::size_t i = 0; i < n; ++i)
            result(i, i) += c[k];
    }
    return result;
}

RecursionOperator recursion_operator(const SkewPencil& p)
{
    const auto binv = inverse(p.b());
    if (!binv)
        throw DomainError("recursion operator needs an invertible B");
    RecursionOperator r;
    r.p = *binv * p.a();
    r.minimal_polynomial = minimal_polynomial(r.p);
    const Polynomial s = squarefree_part(r.minimal_polynomial);
    const Polynomial ds = s.derivative();
    // Newton iteration S <- S - s(S) s'(S)^{-1}; converges in O(log e) steps.
    QMatrix semi = r.p;
    for (;;) {
        const QMatrix residual = evaluate_polynomial(s, semi);
        if (residual.is_zero())
            break;
        const auto correction = inverse(evaluate_polynomial(ds, semi));
        if (!correction)
            throw ConsistencyError("derivative of the squarefree part is singular");
        semi = semi - residual * *correction;
    }
    r.semisimple = semi;
    r.nilpotent = r.p - semi;
    if (!(r.semisimple * r.nilpotent == r.nilpotent * r.semisimple))
        throw ConsistencyError("semisimple and nilpotent parts do not commute");
    return r;
}

ComplementResult ortho_complement(const SkewPencil& p, const Subspace& u)
{
    const std::size_t n = p.dimension();
    if (u.ambient() != n)
        throw StructuralError("subspace ambient dimension differs from the pencil");
    ComplementResult out;
    if (u.is_zero()) {
        out.complement = Subspace::full(n);
        return out;
    }
    const QMatrix ua = u.basis() * p.a();
    const QMatrix ub = u.basis() * p.b();
    PolyMatrix pencil_rows(ua.rows(), n);
    for (std::size_t i = 0; i < ua.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            pencil_rows(i, j) = Polynomial(std::vector<Rational>{ua(i, j), ub(i, j)});
    const std::size_t generic = n - matrix_rank(pencil_rows);

    QMatrix stacked = ua;
    for (std::size_t i = 0; i < ub.rows(); ++i)
        stacked.append_row(ub.row(i));
    const Subspace constant = column_kernel(stacked);
    if (constant.dim() == generic) {
        out.complement = constant;
        out.differs_at_infinity = column_kernel(ub).dim() != generic;
        return out;
    }
    const std::size_t pencil_generic_rank = pencil_rank(p);
    const Rational lambda = first_sample([&](const Rational& v) {
        const QMatrix at = p.at(v);
        return matrix_rank(u.basis() * at) == n - generic && matrix_rank(at) == pencil_generic_rank;
    });
    out.complement = column_kernel(u.basis() * p.at(lambda));
    out.lambda_dependent = true;
    out.sample_lambda = lambda;
    out.differs_at_infinity = column_kernel(ub).dim() != generic;
    return out;
}

Subspace complement_at(const SkewPencil& p, const Subspace& u, const ProjectiveValue& lambda)
{
    if (u.is_zero())
        return Subspace::full(p.dimension());
    const QMatrix form = lambda.infinite ? p.b() : p.at(lambda.value);
    return column_kernel(u.basis() * form);
}

bool is_bi_isotropic(const SkewPencil& p, const Subspace& u)
{
    if (u.ambient() != p.dimension())
        throw StructuralError("subspace ambient dimension differs from the pencil");
    return restrict_form(p.a(), u.basis()).is_zero() && restrict_form(p.b(), u.basis()).is_zero();
}

bool is_admissible(const SkewPencil& p, const Subspace& u)
{
    return !ortho_complement(p, u).lambda_dependent;
}

bool is_bi_lagrangian(const SkewPencil& p, const Subspace& l)
{
    const std::size_t n = p.dimension();
    return l.dim() == n - pencil_rank(p) / 2 && is_bi_isotropic(p, l) && is_admissible(p, l);
}

Subspace build_bi_lagrangian(const SkewPencil& p, const Subspace& seed)
{
    const RecursionOperator r = recursion_operator(p);
    const std::size_t n = p.dimension();
    if (!is_bi_isotropic(p, seed) || !seed.is_invariant(r.p))
        throw DomainError("seed must be bi-isotropic and invariant under the recursion operator");

    auto factors = irreducible_factors(r.minimal_polynomial);
    std::sort(factors.begin(), factors.end(),
              [](const FactorPower& x, const FactorPower& y) { return canonical_less(x.factor, y.factor); });
    std::vector<QMatrix> factor_at_p;
    for (const auto& f : factors)
        factor_at_p.push_back(evaluate_polynomial(f.factor, r.p));

    Subspace l = seed;
    while (2 * l.dim() < n) {
        const Subspace w = l.is_zero() ? Subspace::full(n) : column_kernel(l.basis() * p.b());
        const QMatrix ann = l.annihilator().basis();
        bool extended = false;
        for (std::size_t f = 0; f < factors.size() && !extended; ++f) {
            // v = Wᵀc with π(P) v ∈ L
            const QMatrix wt = w.basis().transpose();
            const QMatrix system = ann.rows() == 0 ? QMatrix(0, w.dim()) : ann * factor_at_p[f] * wt;
            const QMatrix ker = kernel_basis(system);
            for (std::size_t k = 0; k < ker.rows(); ++k) {
                QVector v = wt * ker.row(k);
                if (l.contains(v))
                    continue;
                std::vector<QVector> chain{v};
                const int d = factors[f].factor.degree();
                for (int i = 1; i < d; ++i)
                    chain.push_back(r.p * std::span<const Rational>(chain.back()));
                l = l + Subspace::span(n, chain);
                extended = true;
                break;
            }
        }
        if (!extended)
            throw ConsistencyError("bi-isotropic seed could not be extended");
    }
    if (!is_bi_isotropic(p, l) || !l.is_invariant(r.p))
        throw ConsistencyError("constructed subspace is not an invariant Lagrangian");
    return l;
}

SkewPencil nilpotent_companion(const SkewPencil& p)
{
    const RecursionOperator r = recursion_operator(p);
    const QMatrix a = p.b() * r.nilpotent;
    if (!a.is_skew())
        throw ConsistencyError("B N is not skew-symmetric");
    return SkewPencil(a, p.b());
}

Subspace Reduction::project(const Subspace& w) const
{
    if (!u_perp.contains(w))
        throw DomainError("only subspaces of the complement descend to the quotient");
    return w.image(projection);
}

Subspace Reduction::lift(const Subspace& reduced) const
{
    return reduced.image(section.transpose()) + u;
}

Reduction reduce_pencil(const SkewPencil& p, const Subspace& u)
{
    if (!is_bi_isotropic(p, u))
        throw DomainError("reduction needs a bi-isotropic subspace");
    const ComplementResult c = ortho_complement(p, u);
    if (c.lambda_dependent)
        throw DomainError("reduction needs an admissible subspace");
    const std::size_t n = p.dimension();
    Reduction red;
    red.u = u;
    red.u_perp = c.complement;
    red.section = u.complement_in(red.u_perp);
    red.pencil = SkewPencil(restrict_form(p.a(), red.section), restrict_form(p.b(), red.section));

    // Complete [section; U; rest] to a basis of Qⁿ; Π is the top block of its inverse transpose.
    QMatrix frame = red.section;
    for (std::size_t i = 0; i < u.dim(); ++i)
        frame.append_row(u.basis().row(i));
    const Subspace spanned(n, frame);
    const QMatrix rest = spanned.complement_in(Subspace::full(n));
    for (std::size_t i = 0; i < rest.rows(); ++i)
        frame.append_row(rest.row(i));
    const auto inv = inverse(frame.transpose());
    if (!inv)
        throw ConsistencyError("quotient frame is singular");
    red.projection = QMatrix(red.section.rows(), n);
    for (std::size_t i = 0; i < red.section.rows(); ++i)
        for (std::size_t j = 0; j < n; ++j)
            red.projection(i, j) = (*inv)(i, j);
    return red;
}

Subspace reduce_subspace(const SkewPencil& p, const Subspace& u, const Subspace& l)
{
    const Reduction red = reduce_pencil(p, u);
    return red.project(l.intersect(red.u_perp) + u);
}

SpectrumContainment spectrum_containment(const SkewPencil& p, const Subspace& u)
{
    if (!u.contains(core_subspace(p)))
        throw DomainError("the core subspace must be contained in U");
    const Reduction red = reduce_pencil(p, u);
    SpectrumContainment out;
    out.original = eigenvalues(p);
    const std::size_t m = red.pencil.dimension();
    out.reduced_nondegenerate = m == 0 || pencil_rank(red.pencil) == m;
    if (m > 0 && out.reduced_nondegenerate)
        out.reduced = eigenvalues(red.pencil);
    out.contained = std::all_of(out.reduced.begin(), out.reduced.end(), [&](const PencilEigenvalue& e) {
        return std::any_of(out.original.begin(), out.original.end(),
                           [&](const PencilEigenvalue& o) { return o.key == e.key; });
    });
    return out;
}

std::vector<PrimaryComponent> eigen_splitting(const SkewPencil& p)
{
    const RecursionOperator r = recursion_operator(p);
    std::vector<PrimaryComponent> out;
    std::size_t total = 0;
    for (const auto& f : irreducible_factors(r.minimal_polynomial)) {
        const Subspace v = column_kernel(evaluate_polynomial(f.factor.pow(f.multiplicity), r.p));
        PrimaryComponent c{{false, f.factor.monic().with_variable("t")}, v,
                           SkewPencil(restrict_form(p.a(), v.basis()), restrict_form(p.b(), v.basis()))};
        total += v.dim();
        out.push_back(std::move(c));
    }
    if (total != p.dimension())
        throw ConsistencyError("primary summands do not fill the space");
    std::sort(out.begin(), out.end(),
              [](const PrimaryComponent& x, const PrimaryComponent& y) { return x.eigenvalue < y.eigenvalue; });
    return out;
}

ComplexStructure complex_structure(const SkewPencil& p)
{
    const RecursionOperator r = recursion_operator(p);
    const Polynomial s = minimal_polynomial(r.semisimple);
    const auto factors = irreducible_factors(s);
    if (factors.size() != 1 || factors[0].factor.degree() != 2)
        throw DomainError("complex structure needs exactly one pair of complex eigenvalues");
    const Polynomial q = factors[0].factor.monic();
    ComplexStructure cs;
    cs.alpha = -q.coefficient(1) / 2;
    cs.alpha.canonicalize();
    const Rational beta_sq = q.coefficient(0) - cs.alpha * cs.alpha;
    if (!rational_sqrt(beta_sq, cs.beta))
        throw DomainError("imaginary part of the eigenvalue pair is irrational");
    const std::size_t n = p.dimension();
    cs.j = (r.semisimple - QMatrix::identity(n) * cs.alpha) * Rational(1 / cs.beta);
    if (!(cs.j * cs.j == -QMatrix::identity(n)))
        throw ConsistencyError("J does not square to -1");
    if (!(cs.j * r.p == r.p * cs.j))
        throw ConsistencyError("J does not commute with the recursion operator");
    cs.a_hat = p.a() - p.b() * cs.alpha - p.b() * cs.j * cs.beta;
    if (!cs.a_hat.is_skew())
        throw ConsistencyError("shifted form is not skew-symmetric");
    if (!(cs.a_hat == p.b() * r.nilpotent))
        throw ConsistencyError("shifted form differs from B N");
    return cs;
}

} // namespace bipencil

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

#include "bipencil/pencil.hpp"

#include "bipencil/smith.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace bipencil {

SkewPencil::SkewPencil(QMatrix a, QMatrix b) : a_(std::move(a)), b_(std::move(b))
{
    if (!a_.is_square() || !b_.is_square() || a_.rows() != b_.rows())
        throw StructuralError("pencil matrices must be square of equal order");
    if (!a_.is_skew() || !b_.is_skew())
        throw StructuralError("pencil matrices must be skew-symmetric");
}

std::string ProjectiveValue::to_string() const
{
    return infinite ? std::string("inf") : bipencil::to_string(value);
}

std::string EigenvalueKey::to_string() const
{
    if (infinite)
        return "inf";
    if (minimal_polynomial.degree() == 1)
        return bipencil::to_string(-minimal_polynomial.coefficient(0));
    return "root of " + minimal_polynomial.to_string();
}

bool operator<(const EigenvalueKey& x, const EigenvalueKey& y)
{
    if (x.infinite != y.infinite)
        return !x.infinite;
    if (x.infinite)
        return false;
    return canonical_less(x.minimal_polynomial, y.minimal_polynomial);
}

std::size_t JKInvariants::dimension() const
{
    std::size_t n = std::accumulate(kronecker_sizes.begin(), kronecker_sizes.end(), std::size_t{0});
    for (const auto& j : jordan)
        n += 2 * static_cast<std::size_t>(j.eigenvalue.degree())
             * static_cast<std::size_t>(std::accumulate(j.partition.begin(), j.partition.end(), 0));
    return n;
}

void JKInvariants::normalize()
{
    std::sort(kronecker_sizes.begin(), kronecker_sizes.end());
    // merge duplicate eigenvalues
    std::vector<JordanData> merged;
    for (auto& j : jordan) {
        auto it = std::find_if(merged.begin(), merged.end(), [&](const JordanData& m) { return m.eigenvalue == j.eigenvalue; });
        if (it == merged.end())
            merged.push_back(j);
        else
            it->partition.insert(it->partition.end(), j.partition.begin(), j.partition.end());
    }
    for (auto& j : merged)
        std::sort(j.partition.begin(), j.partition.end(), std::greater<>());
    std::sort(merged.begin(), merged.end(), [](const JordanData& x, const JordanData& y) { return x.eigenvalue < y.eigenvalue; });
    jordan = std::move(merged);
}

std::string JKInvariants::to_string() const
{
    std::ostringstream out;
    out << "kronecker {";
    for (std::size_t i = 0; i < kronecker_sizes.size(); ++i)
        out << (i ? ", " : "") << kronecker_sizes[i];
    out << "}, jordan {";
    for (std::size_t i = 0; i < jordan.size(); ++i) {
        out << (i ? ", " : "") << jordan[i].eigenvalue.to_string() << ": [";
        for (std::size_t k = 0; k < jordan[i].partition.size(); ++k)
            out << (k ? ", " : "") << jordan[i].partition[k];
        out << ']';
    }
    out << '}';
    return out.str();
}

std::size_t pencil_rank(const SkewPencil& p)
{
    // A nonzero r x r minor of A + λB has at most r roots, so the generic
    // rank is attained at one of any n + 1 distinct nodes.
    const std::size_t n = p.dimension();
    std::size_t best = 0;
    for (std::size_t k = 0; k <= n; ++k) {
        best = std::max(best, matrix_rank(p.at(Rational(static_cast<long>(k)))));
        if (best == n)
            break;
    }
    return best;
}

Polynomial characteristic_polynomial(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    const std::size_t rank = pencil_rank(p);
    if (rank == 0)
        throw DomainError("characteristic polynomial of a rank-zero pencil");
    const std::size_t half = rank / 2;
    std::vector<Rational> nodes;
    std::vector<QMatrix> samples;
    for (std::size_t k = 0; k <= half; ++k) {
        nodes.emplace_back(static_cast<long>(k));
        samples.push_back(p.at(nodes.back()));
    }
    if (n > 16 && rank < n)
        throw DomainError("principal-minor enumeration is limited to dimension 16");
    Polynomial acc;
    for_each_subset(n, rank, [&](const std::vector<std::size_t>& idx) {
        std::vector<Rational> values;
        values.reserve(samples.size());
        for (const auto& s : samples)
            values.push_back(pfaffian(s.principal_minor(idx)));
        const Polynomial pf = interpolate(nodes, values);
        if (pf.is_zero())
            return true;
        acc = gcd(acc, pf);
        return acc.degree() != 0;
    });
    if (acc.is_zero())
        throw ConsistencyError("all principal Pfaffians of order rk P vanished");
    return acc.monic();
}

std::vector<PencilEigenvalue> eigenvalues(const SkewPencil& p)
{
    std::vector<PencilEigenvalue> out;
    const std::size_t rank = pencil_rank(p);
    if (rank == 0)
        return out;
    for (const auto& fp : irreducible_factors(characteristic_polynomial(p))) {
        PencilEigenvalue ev;
        ev.key.minimal_polynomial = fp.factor.reflected_monic().with_variable("t");
        ev.multiplicity = fp.multiplicity;
        ev.approximations = numeric_roots(ev.key.minimal_polynomial);
        out.push_back(std::move(ev));
    }
    if (matrix_rank(p.b()) < rank) {
        const Polynomial rev = characteristic_polynomial(p.reversed());
        int mult = 0;
        while (mult <= rev.degree() && is_zero(rev.coefficient(mult)))
            ++mult;
        PencilEigenvalue ev;
        ev.key = EigenvalueKey::at_infinity();
        ev.multiplicity = mult;
        out.push_back(std::move(ev));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.key < y.key; });
    return out;
}

bool is_regular_value(const SkewPencil& p, const ProjectiveValue& lambda)
{
    const QMatrix m = lambda.infinite ? p.b() : p.at(lambda.value);
    return matrix_rank(m) == pencil_rank(p);
}

Subspace core_subspace_by_sampling(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    const std::size_t rank = pencil_rank(p);
    Subspace sum(n);
    std::size_t taken = 0;
    for (long k = 0; taken < rank + 1; ++k) {
        // 0, 1, -1, 2, -2, ...
        const Rational lambda = (k % 2 == 0) ? Rational(-k / 2) : Rational((k + 1) / 2);
        const QMatrix m = p.at(lambda);
        if (matrix_rank(m) != rank)
            continue;
        sum = sum + Subspace(n, kernel_basis(m));
        ++taken;
    }
    return sum;
}

Subspace core_subspace(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    const PolyMatrix kernel = polynomial_kernel_basis(p.matrix());
    QMatrix coeffs(0, n);
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        int deg = 0;
        for (std::size_t j = 0; j < n; ++j)
            deg = std::max(deg, kernel(r, j).degree());
        for (int k = 0; k <= deg; ++k) {
            QVector v(n);
            for (std::size_t j = 0; j < n; ++j)
                v[j] = kernel(r, j).coefficient(k);
            coeffs.append_row(v);
        }
    }
    Subspace core(n, coeffs);
    if (!(core == core_subspace_by_sampling(p)))
        throw ConsistencyError("core subspace: coefficient span and sampled kernels disagree");
    return core;
}

std::vector<int> kronecker_minimal_indices(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    const std::size_t corank = n - pencil_rank(p);
    std::vector<int> indices;
    std::size_t prev_kernel = 0;
    std::size_t prev_count = 0;
    for (std::size_t d = 0; indices.size() < corank; ++d) {
        if (d > n)
            throw ConsistencyError("minimal indices did not stabilize");
        // T_d: block (j, i) = A if j == i, B if j == i + 1
        QMatrix t((d + 2) * n, (d + 1) * n);
        for (std::size_t i = 0; i <= d; ++i)
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t c = 0; c < n; ++c) {
                    t(i * n + r, i * n + c) = p.a()(r, c);
                    t((i + 1) * n + r, i * n + c) = p.b()(r, c);
                }
        const std::size_t kernel = (d + 1) * n - matrix_rank(t);
        const std::size_t count = kernel - prev_kernel; // #{ε <= d}
        for (std::size_t k = prev_count; k < count; ++k)
            indices.push_back(static_cast<int>(d));
        prev_kernel = kernel;
        prev_count = count;
    }
    return indices;
}

namespace {

// Exponent of the irreducible `factor` in `poly`.
int valuation(Polynomial poly, const Polynomial& factor)
{
    int e = 0;
    while (!poly.is_zero() && poly.degree() >= factor.degree()) {
        auto [q, r] = poly.divmod(factor);
        if (!r.is_zero())
            break;
        poly = std::move(q);
        ++e;
    }
    return e;
}

// Pairs equal exponents of a skew pencil's elementary divisors.
std::vector<int> pair_exponents(std::vector<int> exps, const std::string& what)
{
    exps.erase(std::remove(exps.begin(), exps.end(), 0), exps.end());
    std::sort(exps.begin(), exps.end(), std::greater<>());
    if (exps.size() % 2 != 0)
        throw ConsistencyError("elementary divisors of " + what + " do not pair up");
    std::vector<int> partition;
    for (std::size_t i = 0; i < exps.size(); i += 2) {
        if (exps[i] != exps[i + 1])
            throw ConsistencyError("elementary divisors of " + what + " do not pair up");
        partition.push_back(exps[i]);
    }
    return partition;
}

} // namespace

JKInvariants jk_invariants(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    JKInvariants inv;
    for (int k : kronecker_minimal_indices(p))
        inv.kronecker_sizes.push_back(2 * k + 1);

    const std::size_t rank = pencil_rank(p);
    if (rank > 0) {
        const auto finite = smith_normal_form(p.matrix(), false).invariant_factors;
        if (!finite.empty() && finite.back().degree() > 0) {
            for (const auto& fp : irreducible_factors(finite.back())) {
                std::vector<int> exps;
                for (const auto& d : finite)
                    exps.push_back(valuation(d, fp.factor));
                JordanData jd;
                jd.eigenvalue.minimal_polynomial = fp.factor.reflected_monic().with_variable("t");
                jd.partition = pair_exponents(exps, "eigenvalue " + jd.eigenvalue.to_string());
                inv.jordan.push_back(std::move(jd));
            }
        }
        if (matrix_rank(p.b()) < rank) {
            const auto rev = smith_normal_form(p.reversed().matrix(), false).invariant_factors;
            const Polynomial mu = Polynomial::monomial(1);
            std::vector<int> exps;
            for (const auto& d : rev)
                exps.push_back(valuation(d, mu));
            JordanData jd;
            jd.eigenvalue = EigenvalueKey::at_infinity();
            jd.partition = pair_exponents(exps, "the infinite eigenvalue");
            if (!jd.partition.empty())
                inv.jordan.push_back(std::move(jd));
        }
    }
    inv.normalize();
    if (inv.dimension() != n)
        throw ConsistencyError("Jordan-Kronecker block sizes sum to " + std::to_string(inv.dimension())
                               + " but the pencil has dimension " + std::to_string(n));
    std::size_t jordan_rank = n - inv.kronecker_sizes.size();
    if (jordan_rank != rank)
        throw ConsistencyError("Kronecker block count does not match the generic corank");
    return inv;
}

namespace {

// (partition, realness) signature per complex eigenvalue, sorted.
std::vector<std::pair<std::vector<int>, int>> bundle_signature(const JKInvariants& inv)
{
    std::vector<std::pair<std::vector<int>, int>> sig;
    for (const auto& j : inv.jordan) {
        if (j.eigenvalue.infinite) {
            sig.emplace_back(j.partition, 0);
            continue;
        }
        for (const auto& r : numeric_roots(j.eigenvalue.minimal_polynomial)) {
            if (r.imag() == 0.0)
                sig.emplace_back(j.partition, 0);
            else if (r.imag() > 0.0)
                sig.emplace_back(j.partition, 1); // one entry per conjugate pair
        }
    }
    std::sort(sig.begin(), sig.end());
    return sig;
}

} // namespace

bool same_bundle(const JKInvariants& x, const JKInvariants& y)
{
    return x.kronecker_sizes == y.kronecker_sizes && bundle_signature(x) == bundle_signature(y);
}

bool same_bundle(const SkewPencil& p1, const SkewPencil& p2)
{
    if (p1.dimension() != p2.dimension())
        throw StructuralError("bundle comparison needs pencils of equal dimension");
    return same_bundle(jk_invariants(p1), jk_invariants(p2));
}

namespace {

QMatrix standard_symplectic(std::size_t m)
{
    QMatrix b(2 * m, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        b(i, m + i) = 1;
        b(m + i, i) = -1;
    }
    return b;
}

// [[0, M], [-M^T, 0]]
QMatrix off_diagonal_skew(const QMatrix& m)
{
    const std::size_t k = m.rows();
    QMatrix a(2 * k, 2 * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            a(i, k + j) = m(i, j);
            a(k + j, i) = -m(i, j);
        }
    return a;
}

// I_m ⊗ C + N_m ⊗ I_d
QMatrix block_jordan(const QMatrix& c, int m)
{
    const std::size_t d = c.rows();
    const std::size_t size = d * static_cast<std::size_t>(m);
    QMatrix out(size, size);
    for (std::size_t b = 0; b < static_cast<std::size_t>(m); ++b) {
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                out(b * d + i, b * d + j) = c(i, j);
        if (b + 1 < static_cast<std::size_t>(m))
            for (std::size_t i = 0; i < d; ++i)
                out(b * d + i, (b + 1) * d + i) = 1;
    }
    return out;
}

} // namespace

SkewPencil kronecker_block(int k)
{
    if (k < 0)
        throw StructuralError("negative Kronecker index");
    const std::size_t kk = static_cast<std::size_t>(k);
    const std::size_t n = 2 * kk + 1;
    QMatrix a(n, n), b(n, n);
    for (std::size_t i = 0; i < kk; ++i) {
        a(i, kk + i) = 1;
        a(kk + i, i) = -1;
        b(i, kk + i + 1) = 1;
        b(kk + i + 1, i) = -1;
    }
    return SkewPencil(a, b);
}

SkewPencil jordan_block(const Rational& eigenvalue, int m)
{
    if (m < 1)
        throw StructuralError("Jordan block size must be positive");
    QMatrix c(1, 1);
    c(0, 0) = eigenvalue;
    return SkewPencil(off_diagonal_skew(block_jordan(c, m)), standard_symplectic(static_cast<std::size_t>(m)));
}

SkewPencil complex_jordan_block(const Rational& alpha, const Rational& beta, int m)
{
    if (m < 1)
        throw StructuralError("Jordan block size must be positive");
    if (is_zero(beta))
        throw DomainError("complex Jordan block needs a nonzero imaginary part");
    QMatrix c{{alpha, -beta}, {beta, alpha}};
    return SkewPencil(off_diagonal_skew(block_jordan(c, m)), standard_symplectic(2 * static_cast<std::size_t>(m)));
}

SkewPencil infinite_jordan_block(int m)
{
    if (m < 1)
        throw StructuralError("Jordan block size must be positive");
    const std::size_t mm = static_cast<std::size_t>(m);
    QMatrix nil(mm, mm);
    for (std::size_t i = 0; i + 1 < mm; ++i)
        nil(i, i + 1) = 1;
    return SkewPencil(standard_symplectic(mm), off_diagonal_skew(nil));
}

SkewPencil jordan_block(const EigenvalueKey& key, int m)
{
    if (key.infinite)
        return infinite_jordan_block(m);
    const Polynomial& pi = key.minimal_polynomial;
    if (pi.degree() < 1 || pi.leading() != 1)
        throw StructuralError("eigenvalue key must be a monic polynomial of positive degree");
    if (pi.degree() == 1)
        return jordan_block(-pi.coefficient(0), m);
    if (pi.degree() == 2) {
        // t^2 - 2αt + (α^2 + β^2)
        const Rational alpha = -pi.coefficient(1) / 2;
        const Rational beta2 = pi.coefficient(0) - alpha * alpha;
        Rational beta;
        if (sgn(beta2) > 0 && rational_sqrt(beta2, beta))
            return complex_jordan_block(alpha, beta, m);
    }
    const std::size_t d = static_cast<std::size_t>(pi.degree());
    QMatrix c(d, d);
    for (std::size_t i = 1; i < d; ++i)
        c(i, i - 1) = 1;
    for (std::size_t i = 0; i < d; ++i)
        c(i, d - 1) = -pi.coefficient(static_cast<int>(i));
    const QMatrix big = block_jordan(c, m);
    return SkewPencil(off_diagonal_skew(big), standard_symplectic(big.rows()));
}

SkewPencil direct_sum(const SkewPencil& x, const SkewPencil& y)
{
    return SkewPencil(direct_sum(x.a(), y.a()), direct_sum(x.b(), y.b()));
}

SkewPencil canonical_pencil(const JKInvariants& input, std::optional<std::size_t> dimension)
{
    JKInvariants inv = input;
    for (int s : inv.kronecker_sizes)
        if (s < 1 || s % 2 == 0)
            throw StructuralError("Kronecker block sizes must be odd and positive");
    for (const auto& j : inv.jordan)
        for (int m : j.partition)
            if (m < 1)
                throw StructuralError("Jordan partition entries must be positive");
    inv.normalize();
    if (dimension && *dimension != inv.dimension())
        throw StructuralError("invariants describe dimension " + std::to_string(inv.dimension())
                              + ", expected " + std::to_string(*dimension));
    SkewPencil out(QMatrix(0, 0), QMatrix(0, 0));
    for (const auto& j : inv.jordan)
        for (int m : j.partition)
            out = direct_sum(out, jordan_block(j.eigenvalue, m));
    for (int s : inv.kronecker_sizes)
        out = direct_sum(out, kronecker_block((s - 1) / 2));
    return out;
}

SkewPencil congruence(const SkewPencil& p, const QMatrix& s)
{
    const QMatrix st = s.transpose();
    return SkewPencil(st * p.a() * s, st * p.b() * s);
}

} // namespace bipencil

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

#include "bipencil/subspace.hpp"

namespace bipencil {

Subspace::Subspace(std::size_t ambient, const QMatrix& rows) : ambient_(ambient)
{
    if (rows.rows() > 0 && rows.cols() != ambient)
        throw StructuralError("subspace basis has the wrong ambient dimension");
    basis_ = rows.rows() == 0 ? QMatrix(0, ambient) : row_space(rows);
}

Subspace Subspace::span(std::size_t n, const std::vector<QVector>& vectors)
{
    QMatrix m(0, n);
    for (const auto& v : vectors)
        m.append_row(v);
    return Subspace(n, m);
}

Subspace Subspace::coordinate(std::size_t n, const std::vector<std::size_t>& indices)
{
    QMatrix m(0, n);
    for (auto i : indices) {
        if (i >= n)
            throw StructuralError("coordinate index out of range");
        QVector v(n, Rational(0));
        v[i] = 1;
        m.append_row(v);
    }
    return Subspace(n, m);
}

Subspace Subspace::coordinate(std::size_t n, std::initializer_list<std::size_t> indices)
{
    return coordinate(n, std::vector<std::size_t>(indices));
}

bool Subspace::contains(std::span<const Rational> v) const
{
    if (v.size() != ambient_)
        throw StructuralError("vector length differs from the ambient dimension");
    QMatrix m = basis_;
    m.append_row(v);
    return matrix_rank(m) == dim();
}

bool Subspace::contains(const Subspace& other) const
{
    if (other.ambient_ != ambient_)
        throw StructuralError("subspaces live in different ambient spaces");
    return (*this + other).dim() == dim();
}

Subspace Subspace::annihilator() const
{
    if (dim() == 0)
        return full(ambient_);
    return Subspace(ambient_, kernel_basis(basis_));
}

Subspace Subspace::intersect(const Subspace& other) const
{
    if (other.ambient_ != ambient_)
        throw StructuralError("subspaces live in different ambient spaces");
    return (annihilator() + other.annihilator()).annihilator();
}

Subspace operator+(const Subspace& a, const Subspace& b)
{
    if (a.ambient_ != b.ambient_)
        throw StructuralError("subspaces live in different ambient spaces");
    QMatrix m = a.basis_;
    for (std::size_t i = 0; i < b.dim(); ++i)
        m.append_row(b.basis_.row(i));
    return Subspace(a.ambient_, m);
}

Subspace Subspace::image(const QMatrix& m) const
{
    if (m.cols() != ambient_)
        throw StructuralError("operator does not act on this ambient space");
    if (dim() == 0)
        return Subspace(m.rows());
    return Subspace(m.rows(), (m * basis_.transpose()).transpose());
}

bool Subspace::is_invariant(const QMatrix& m) const
{
    return contains(image(m));
}

QMatrix Subspace::complement_in(const Subspace& larger) const
{
    if (!larger.contains(*this))
        throw DomainError("subspace is not contained in the enlarging subspace");
    QMatrix extra(0, ambient_);
    Subspace current = *this;
    for (std::size_t i = 0; i < larger.dim(); ++i) {
        const auto v = larger.basis_.row(i);
        if (current.contains(v))
            continue;
        extra.append_row(v);
        current = current + Subspace(ambient_, QMatrix(1, ambient_, {v.begin(), v.end()}));
    }
    return extra;
}

std::string Subspace::to_string() const
{
    return "span" + bipencil::to_string(basis_);
}

} // namespace bipencil

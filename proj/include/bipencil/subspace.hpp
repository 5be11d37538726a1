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

#pragma once

#include "bipencil/linalg.hpp"

#include <initializer_list>

namespace bipencil {

/// Subspace of Q^n stored as a reduced row-echelon basis, so two subspaces
/// are equal exactly when their bases are.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient), basis_(0, ambient) {}
    /// Row space of `rows`; rows need not be independent.
    Subspace(std::size_t ambient, const QMatrix& rows);

    static Subspace full(std::size_t n) { return Subspace(n, QMatrix::identity(n)); }
    static Subspace span(std::size_t n, const std::vector<QVector>& vectors);
    /// Span of standard basis vectors e_i, indices 0-based.
    static Subspace coordinate(std::size_t n, std::initializer_list<std::size_t> indices);
    static Subspace coordinate(std::size_t n, const std::vector<std::size_t>& indices);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    bool is_zero() const { return dim() == 0; }
    const QMatrix& basis() const { return basis_; }
    QVector vector(std::size_t i) const { return basis_.row_vector(i); }

    bool contains(std::span<const Rational> v) const;
    bool contains(const Subspace& other) const;

    /// {w : <w, u> = 0 for all u}, with the standard dot product.
    Subspace annihilator() const;
    Subspace intersect(const Subspace& other) const;
    friend Subspace operator+(const Subspace& a, const Subspace& b);
    friend bool operator==(const Subspace& a, const Subspace& b)
    {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }

    /// Image under the column-vector action v -> M v.
    Subspace image(const QMatrix& m) const;
    bool is_invariant(const QMatrix& m) const;

    /// Rows completing this subspace's basis to a basis of `larger`.
    QMatrix complement_in(const Subspace& larger) const;

    std::string to_string() const;

private:
    std::size_t ambient_;
    QMatrix basis_;
};

} // namespace bipencil

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

#include "bipencil/smith.hpp"

#include "bipencil/linalg.hpp"

#include <functional>
#include <optional>

namespace bipencil {

namespace {

class SmithReducer {
public:
    SmithReducer(const PolyMatrix& m, bool track)
        : s_(m), track_(track)
    {
        if (track_) {
            u_ = PolyMatrix::identity(m.rows());
            v_ = PolyMatrix::identity(m.cols());
        }
    }

    SmithForm run()
    {
        const std::size_t lim = std::min(s_.rows(), s_.cols());
        std::vector<Polynomial> factors;
        for (std::size_t t = 0; t < lim; ++t) {
            if (!reduce_step(t))
                break;
            const Rational inv = 1 / s_(t, t).leading();
            scale_row(t, inv);
            factors.push_back(s_(t, t));
        }
        SmithForm out;
        out.invariant_factors = std::move(factors);
        if (track_) {
            out.left = std::move(u_);
            out.right = std::move(v_);
        }
        return out;
    }

private:
    std::optional<std::pair<std::size_t, std::size_t>> min_degree_entry(std::size_t t) const
    {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        int best_deg = 0;
        for (std::size_t i = t; i < s_.rows(); ++i)
            for (std::size_t j = t; j < s_.cols(); ++j) {
                const auto& e = s_(i, j);
                if (e.is_zero())
                    continue;
                if (!best || e.degree() < best_deg) {
                    best = {i, j};
                    best_deg = e.degree();
                }
            }
        return best;
    }

    // Returns false when the trailing block is zero.
    bool reduce_step(std::size_t t)
    {
        for (;;) {
            auto pos = min_degree_entry(t);
            if (!pos)
                return false;
            swap_rows(t, pos->first);
            swap_cols(t, pos->second);

            bool clean = true;
            for (std::size_t i = t + 1; i < s_.rows(); ++i) {
                if (s_(i, t).is_zero())
                    continue;
                auto [q, r] = s_(i, t).divmod(s_(t, t));
                add_row_multiple(i, t, -q);
                if (!r.is_zero())
                    clean = false;
            }
            for (std::size_t j = t + 1; j < s_.cols(); ++j) {
                if (s_(t, j).is_zero())
                    continue;
                auto [q, r] = s_(t, j).divmod(s_(t, t));
                add_col_multiple(j, t, -q);
                if (!r.is_zero())
                    clean = false;
            }
            if (!clean)
                continue;

            // pivot must divide the whole trailing block
            bool divides = true;
            for (std::size_t i = t + 1; i < s_.rows() && divides; ++i)
                for (std::size_t j = t + 1; j < s_.cols(); ++j)
                    if (!s_(i, j).is_zero() && !s_(i, j).divisible_by(s_(t, t))) {
                        add_row_multiple(t, i, Polynomial(Rational(1)));
                        divides = false;
                        break;
                    }
            if (divides)
                return true;
        }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        s_.swap_rows(a, b);
        if (track_)
            u_.swap_rows(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        s_.swap_cols(a, b);
        if (track_)
            v_.swap_cols(a, b);
    }
    // row_dst += factor * row_src
    void add_row_multiple(std::size_t dst, std::size_t src, const Polynomial& factor)
    {
        for (std::size_t j = 0; j < s_.cols(); ++j)
            if (!s_(src, j).is_zero())
                s_(dst, j) += factor * s_(src, j);
        if (track_)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                if (!u_(src, j).is_zero())
                    u_(dst, j) += factor * u_(src, j);
    }
    // col_dst += factor * col_src
    void add_col_multiple(std::size_t dst, std::size_t src, const Polynomial& factor)
    {
        for (std::size_t i = 0; i < s_.rows(); ++i)
            if (!s_(i, src).is_zero())
                s_(i, dst) += factor * s_(i, src);
        if (track_)
            for (std::size_t i = 0; i < v_.rows(); ++i)
                if (!v_(i, src).is_zero())
                    v_(i, dst) += factor * v_(i, src);
    }
    void scale_row(std::size_t r, const Rational& s)
    {
        for (std::size_t j = 0; j < s_.cols(); ++j)
            s_(r, j) *= s;
        if (track_)
            for (std::size_t j = 0; j < u_.cols(); ++j)
                u_(r, j) *= s;
    }

    PolyMatrix s_;
    PolyMatrix u_;
    PolyMatrix v_;
    bool track_;
};

} // namespace

SmithForm smith_normal_form(const PolyMatrix& m, bool with_transforms)
{
    return SmithReducer(m, with_transforms).run();
}

std::vector<Polynomial> invariant_factors_by_minors(const PolyMatrix& m)
{
    std::vector<Polynomial> out;
    Polynomial prev(Rational(1));
    const std::size_t lim = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= lim; ++k) {
        Polynomial dk;
        for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
            for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
                dk = gcd(dk, determinant(m.submatrix(rows, cols)));
                return true;
            });
            return true;
        });
        if (dk.is_zero())
            break;
        out.push_back(dk.exact_div(prev).monic());
        prev = dk;
    }
    return out;
}

} // namespace bipencil

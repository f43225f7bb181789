#include "btt/dglie.hpp"

namespace btt {

int DgLie::dim(int n) const
{
    auto it = dims_.find(n);
    return it == dims_.end() ? 0 : it->second;
}

SparseMatrix DgLie::diff(int n) const
{
    auto it = diff_.find(n);
    if (it != diff_.end())
        return it->second;
    return SparseMatrix(field_, dim(n + 1), dim(n));
}

Vec DgLie::bracket(int p, const Vec& x, int q, const Vec& y) const
{
    BTT_REQUIRE(static_cast<int>(x.size()) == dim(p) && static_cast<int>(y.size()) == dim(q),
                "bracket: coordinate length mismatch");
    Vec out = zero_vec(field_, dim(p + q));
    auto it = brackets_.find({p, q});
    if (it == brackets_.end())
        return out;
    for (size_t a = 0; a < x.size(); ++a) {
        if (x[a].is_zero())
            continue;
        const SparseMatrix& m = it->second[a];
        Vec contrib = m.apply(y);
        for (size_t i = 0; i < out.size(); ++i)
            out[i] += x[a] * contrib[i];
    }
    return out;
}

std::string DgLie::label(int n, int i) const
{
    auto it = labels_.find(n);
    if (it != labels_.end() && i >= 0 && i < static_cast<int>(it->second.size()))
        return it->second[static_cast<size_t>(i)];
    return "b" + std::to_string(n) + "_" + std::to_string(i);
}

Homology DgLie::homology(int n) const
{
    return Homology(diff(n - 1), diff(n));
}

DgLie DgLie::make(FieldSpec field, std::map<int, int> dims, std::map<int, SparseMatrix> differential,
                  BracketTable brackets, std::map<int, std::vector<std::string>> labels,
                  bool validate)
{
    DgLie l;
    l.field_ = field;
    l.dims_ = std::move(dims);
    l.diff_ = std::move(differential);
    l.brackets_ = std::move(brackets);
    l.labels_ = std::move(labels);

    for (const auto& [n, m] : l.diff_)
        BTT_REQUIRE(m.rows() == l.dim(n + 1) && m.cols() == l.dim(n),
                    "differential block shape mismatch at degree " + std::to_string(n));
    for (const auto& [pq, mats] : l.brackets_) {
        BTT_REQUIRE(static_cast<int>(mats.size()) == l.dim(pq.first),
                    "bracket table size mismatch");
        for (const auto& m : mats)
            BTT_REQUIRE(m.rows() == l.dim(pq.first + pq.second) && m.cols() == l.dim(pq.second),
                        "bracket block shape mismatch");
    }

    if (!validate)
        return l;

    auto unit = [&](int n, int i) {
        Vec v = zero_vec(field, l.dim(n));
        v[static_cast<size_t>(i)] = Scalar::one(field);
        return v;
    };
    std::vector<int> degs;
    for (const auto& [n, d] : l.dims_)
        if (d > 0)
            degs.push_back(n);

    for (int n : degs) {
        SparseMatrix sq = l.diff(n + 1) * l.diff(n);
        BTT_REQUIRE(sq.is_zero(), "∂² != 0 at degree " + std::to_string(n));
    }

    for (int p : degs)
        for (int q : degs) {
            for (int a = 0; a < l.dim(p); ++a)
                for (int bidx = 0; bidx < l.dim(q); ++bidx) {
                    Vec xa = unit(p, a), yb = unit(q, bidx);
                    Vec lhs = l.bracket(p, xa, q, yb);
                    Vec rhs = l.bracket(q, yb, p, xa);
                    // [x,y] = -(-1)^{pq} [y,x]
                    if ((p * q) % 2 == 0)
                        rhs = vec_scale(-Scalar::one(field), rhs);
                    BTT_REQUIRE(lhs == rhs, "bracket antisymmetry fails at (" + l.label(p, a) +
                                                ", " + l.label(q, bidx) + ")");
                    // ∂[x,y] = [∂x,y] + (-1)^p [x,∂y]
                    Vec d_lhs = l.diff(p + q).apply(lhs);
                    Vec t1 = l.bracket(p + 1, l.diff(p).apply(xa), q, yb);
                    Vec t2 = l.bracket(p, xa, q + 1, l.diff(q).apply(yb));
                    Vec d_rhs = (p % 2) ? vec_sub(t1, t2) : vec_add(t1, t2);
                    BTT_REQUIRE(d_lhs == d_rhs, "∂ is not a bracket derivation at (" +
                                                    l.label(p, a) + ", " + l.label(q, bidx) + ")");
                }
        }

    for (int p : degs)
        for (int q : degs)
            for (int r : degs)
                for (int a = 0; a < l.dim(p); ++a)
                    for (int bidx = 0; bidx < l.dim(q); ++bidx)
                        for (int c = 0; c < l.dim(r); ++c) {
                            Vec xa = unit(p, a), yb = unit(q, bidx), zc = unit(r, c);
                            // [x,[y,z]] = [[x,y],z] + (-1)^{pq}[y,[x,z]]
                            Vec lhs = l.bracket(p, xa, q + r, l.bracket(q, yb, r, zc));
                            Vec t1 = l.bracket(p + q, l.bracket(p, xa, q, yb), r, zc);
                            Vec t2 = l.bracket(q, yb, p + r, l.bracket(p, xa, r, zc));
                            Vec rhs = ((p * q) % 2) ? vec_sub(t1, t2) : vec_add(t1, t2);
                            if (!(lhs == rhs))
                                throw input_error("graded Jacobi fails at (" + l.label(p, a) + ", " +
                                                  l.label(q, bidx) + ", " + l.label(r, c) + ")");
                        }
    return l;
}

DgLie DgLie::reduce_mod(std::uint32_t p) const
{
    BTT_REQUIRE(field_.is_rationals(), "reduce_mod needs a rational dg-Lie algebra");
    FieldSpec fp = FieldSpec::prime_field(p);
    auto reduce_matrix = [&](const SparseMatrix& m) {
        SparseMatrix out(fp, m.rows(), m.cols());
        for (int i = 0; i < m.rows(); ++i)
            for (const auto& [j, v] : m.row(i))
                out.set(i, j, v.reduce_mod(p));
        return out;
    };
    std::map<int, SparseMatrix> diff;
    for (const auto& [n, m] : diff_)
        diff.emplace(n, reduce_matrix(m));
    BracketTable br;
    for (const auto& [pq, mats] : brackets_) {
        std::vector<SparseMatrix> red;
        for (const auto& m : mats)
            red.push_back(reduce_matrix(m));
        br.emplace(pq, std::move(red));
    }
    return DgLie::make(fp, dims_, std::move(diff), std::move(br), labels_, true);
}

DgLie to_dg_lie(const BVStructure& b, bool restrict_first_bidegree, bool check_bv)
{
    const AlgebraRef& alg = b.algebra();
    const FieldSpec& f = alg->field();
    if (check_bv) {
        VerifyReport rep = verify_bv(b);
        if (!rep.pass()) {
            std::string what = "to_dg_lie requires a verified BV structure;";
            for (const auto& c : rep.checks)
                if (!c.pass)
                    what += " " + c.name + " failed (" + c.witness + ")";
            throw input_error(what);
        }
    }
    if (restrict_first_bidegree)
        BTT_REQUIRE(alg->bigraded(), "column restriction needs a bigraded algebra");

    // Sub-basis per L-degree n: monomials of A^{n+1} (those with first
    // bidegree component 1 in the restricted case).
    std::map<int, std::vector<int>> pick;
    std::map<int, int> dims;
    std::map<int, std::vector<std::string>> labels;
    for (int adeg = alg->min_degree(); adeg <= alg->max_degree(); ++adeg) {
        const auto& basis = alg->basis(adeg);
        std::vector<int> idxs;
        for (size_t k = 0; k < basis.size(); ++k) {
            if (restrict_first_bidegree && alg->bidegree_of(basis[k]).first != 1)
                continue;
            idxs.push_back(static_cast<int>(k));
        }
        if (idxs.empty())
            continue;
        int n = adeg - 1;
        dims[n] = static_cast<int>(idxs.size());
        for (int k : idxs)
            labels[n].push_back(alg->monomial_str(basis[static_cast<size_t>(k)]));
        pick[n] = std::move(idxs);
    }

    // Express an A-element of degree n+1 in the sub-basis of L^n, rejecting
    // leakage outside the column.
    auto to_coords = [&](const Element& e, int n) {
        Vec full = e.component(n + 1).coords(n + 1);
        Vec out = zero_vec(f, dims.count(n) ? dims[n] : 0);
        std::vector<bool> kept(full.size(), false);
        if (pick.count(n))
            for (size_t c = 0; c < pick[n].size(); ++c) {
                out[c] = full[static_cast<size_t>(pick[n][c])];
                kept[static_cast<size_t>(pick[n][c])] = true;
            }
        for (size_t k = 0; k < full.size(); ++k)
            if (!kept[k] && !full[k].is_zero())
                throw input_error("column restriction is not closed: image leaks outside "
                                  "the first-bidegree-1 column at degree " + std::to_string(n + 1));
        return out;
    };
    auto basis_element = [&](int n, int a) {
        return Element(alg, alg->basis(n + 1)[static_cast<size_t>(pick[n][static_cast<size_t>(a)])],
                       Scalar::one(f));
    };

    std::map<int, SparseMatrix> diff;
    for (const auto& [n, dn] : dims) {
        SparseMatrix m(f, dims.count(n + 1) ? dims[n + 1] : 0, dn);
        for (int a = 0; a < dn; ++a) {
            Element img = b.d()(basis_element(n, a));
            Vec col = to_coords(img, n + 1);
            for (size_t i = 0; i < col.size(); ++i)
                if (!col[i].is_zero())
                    m.set(static_cast<int>(i), a, col[i]);
        }
        if (!m.is_zero())
            diff.emplace(n, std::move(m));
    }

    DgLie::BracketTable brackets;
    for (const auto& [p, dp] : dims)
        for (const auto& [q, dq] : dims) {
            int target = p + q;
            std::vector<SparseMatrix> mats;
            bool any = false;
            for (int a = 0; a < dp; ++a) {
                SparseMatrix m(f, dims.count(target) ? dims[target] : 0, dq);
                Element ea = basis_element(p, a);
                for (int bidx = 0; bidx < dq; ++bidx) {
                    Element br = derived_bracket(b, ea, basis_element(q, bidx));
                    if (br.is_zero())
                        continue;
                    Vec col = to_coords(br, target);
                    for (size_t i = 0; i < col.size(); ++i)
                        if (!col[i].is_zero()) {
                            m.set(static_cast<int>(i), bidx, col[i]);
                            any = true;
                        }
                }
                mats.push_back(std::move(m));
            }
            if (any)
                brackets.emplace(std::make_pair(p, q), std::move(mats));
        }

    return DgLie::make(f, std::move(dims), std::move(diff), std::move(brackets), std::move(labels),
                       true);
}

} // namespace btt

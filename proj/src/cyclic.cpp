#include "btt/cyclic.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace btt {

std::string tristate_str(TriState t)
{
    switch (t) {
    case TriState::True: return "true";
    case TriState::False: return "false";
    default: return "inconclusive";
    }
}

NegativeCyclicComplex NegativeCyclicComplex::build(const BVStructure& b, int truncation)
{
    BTT_REQUIRE(truncation >= 1, "u-truncation must be >= 1");
    GradedOperator delta = b.delta1();
    {
        GradedOperator sq = delta * delta;
        GradedOperator c = graded_commutator(b.d(), delta);
        if (!sq.is_zero() || !c.is_zero())
            throw input_error("BV verification failure: need Δ² = 0 and [d,Δ] = 0 "
                              "to form the negative cyclic complex");
    }

    NegativeCyclicComplex out;
    out.base_ = std::make_shared<BVStructure>(b);
    out.M_ = truncation;
    const AlgebraRef& alg = b.algebra();
    out.min_total_ = alg->min_degree();
    out.max_total_ = alg->max_degree() + 2 * truncation;
    for (int n = out.min_total_; n <= out.max_total_; ++n) {
        std::vector<CyclicBasisItem> items;
        for (int j = 0; j <= truncation; ++j) {
            int adeg = n - 2 * j;
            for (int idx = 0; idx < alg->dim(adeg); ++idx)
                items.push_back({j, adeg, idx});
        }
        if (!items.empty())
            out.bases_[n] = std::move(items);
    }
    return out;
}

const FieldSpec& NegativeCyclicComplex::field() const { return base_->algebra()->field(); }

const std::vector<CyclicBasisItem>& NegativeCyclicComplex::basis(int n) const
{
    auto it = bases_.find(n);
    return it == bases_.end() ? empty_ : it->second;
}

SparseMatrix NegativeCyclicComplex::differential(int n) const
{
    const auto& src = basis(n);
    const auto& tgt = basis(n + 1);
    SparseMatrix D(field(), static_cast<int>(tgt.size()), static_cast<int>(src.size()));
    if (src.empty() || tgt.empty())
        return D;

    std::map<std::pair<int, int>, int> pos;
    for (size_t k = 0; k < tgt.size(); ++k)
        pos[{tgt[k].j, tgt[k].idx}] = static_cast<int>(k);
    // For a fixed j the target items of A-degree adeg+1 share that j; idx is
    // the position within the algebra basis.
    auto target_at = [&](int j, int idx) {
        auto it = pos.find({j, idx});
        return it == pos.end() ? -1 : it->second;
    };

    const GradedOperator& d = base_->d();
    GradedOperator delta = base_->delta1();
    for (size_t k = 0; k < src.size(); ++k) {
        const auto& it = src[k];
        const SparseMatrix& db = d.block(it.adeg);
        if (db.rows() > 0)
            for (int i = 0; i < db.rows(); ++i) {
                Scalar v = db.at(i, it.idx);
                if (!v.is_zero()) {
                    int t = target_at(it.j, i);
                    BTT_ASSERT(t >= 0, "cyclic differential target missing (d part)");
                    D.add_to(t, static_cast<int>(k), v);
                }
            }
        if (it.j + 1 <= M_) {
            const SparseMatrix& qb = delta.block(it.adeg);
            if (qb.rows() > 0)
                for (int i = 0; i < qb.rows(); ++i) {
                    Scalar v = qb.at(i, it.idx);
                    if (!v.is_zero()) {
                        int t = target_at(it.j + 1, i);
                        BTT_ASSERT(t >= 0, "cyclic differential target missing (uΔ part)");
                        D.add_to(t, static_cast<int>(k), v);
                    }
                }
        }
    }
    return D;
}

std::vector<Vec> NegativeCyclicComplex::filtration(int n, int p) const
{
    const auto& items = basis(n);
    std::vector<Vec> vecs;
    for (size_t k = 0; k < items.size(); ++k)
        if (items[k].j >= p) {
            Vec v = zero_vec(field(), static_cast<int>(items.size()));
            v[k] = Scalar::one(field());
            vecs.push_back(std::move(v));
        }
    return vecs;
}

std::vector<Vec> NegativeCyclicComplex::z_space(int n, int p_low, int p_target) const
{
    const int plow = std::max(p_low, 0);
    const auto& items = basis(n);
    if (items.empty())
        return {};
    std::vector<int> member;
    for (size_t k = 0; k < items.size(); ++k)
        if (items[k].j >= plow)
            member.push_back(static_cast<int>(k));
    if (member.empty())
        return {};

    const auto& tgt = basis(n + 1);
    std::vector<int> constraint;
    for (size_t k = 0; k < tgt.size(); ++k)
        if (tgt[k].j < p_target)
            constraint.push_back(static_cast<int>(k));

    if (constraint.empty())
        return filtration(n, plow);

    SparseMatrix D = differential(n);
    SparseMatrix C(field(), static_cast<int>(constraint.size()), static_cast<int>(member.size()));
    for (size_t r = 0; r < constraint.size(); ++r)
        for (size_t c = 0; c < member.size(); ++c) {
            Scalar v = D.at(constraint[r], member[c]);
            if (!v.is_zero())
                C.set(static_cast<int>(r), static_cast<int>(c), v);
        }
    std::vector<Vec> out;
    for (const Vec& k : kernel_basis(C)) {
        Vec full = zero_vec(field(), static_cast<int>(items.size()));
        for (size_t c = 0; c < member.size(); ++c)
            full[static_cast<size_t>(member[c])] = k[c];
        out.push_back(std::move(full));
    }
    return span_echelon(out, static_cast<int>(items.size()), field());
}

std::string NegativeCyclicComplex::item_str(int n, int k) const
{
    const auto& it = basis(n)[static_cast<size_t>(k)];
    const AlgebraRef& alg = base_->algebra();
    std::ostringstream os;
    os << "u^" << it.j << " " << alg->monomial_str(alg->basis(it.adeg)[static_cast<size_t>(it.idx)]);
    return os.str();
}

namespace {

struct PageSlice {
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, std::vector<Vec>> bases;
};

PageSlice compute_page(const NegativeCyclicComplex& c, int r, int max_p, bool keep_bases)
{
    PageSlice out;
    const FieldSpec& f = c.field();
    for (int n = c.min_total(); n <= c.max_total(); ++n) {
        int dimn = c.dim(n);
        if (dimn == 0)
            continue;
        for (int p = 0; p <= std::min(max_p, c.truncation()); ++p) {
            std::vector<Vec> Z = c.z_space(n, p, p + r);
            if (Z.empty())
                continue;
            std::vector<Vec> N1 = c.z_space(n, p + 1, p + r);
            std::vector<Vec> Bsrc = c.z_space(n - 1, p - r + 1, p);
            std::vector<Vec> denom = N1;
            if (!Bsrc.empty()) {
                SparseMatrix D = c.differential(n - 1);
                for (const Vec& s : Bsrc)
                    denom.push_back(D.apply(s));
            }
            denom = span_echelon(denom, dimn, f);
            int dim = static_cast<int>(Z.size()) - static_cast<int>(denom.size());
            if (dim <= 0)
                continue;
            out.dims[{p, n - p}] = dim;
            if (keep_bases)
                out.bases[{p, n - p}] = complement_reps(Z, denom);
        }
    }
    return out;
}

int env_truncation_cap(int fallback)
{
    if (const char* s = std::getenv("BTT_MAX_U")) {
        int v = std::atoi(s);
        if (v > 0)
            return v;
    }
    return fallback;
}

int diff_reach(const BVStructure& b)
{
    // Page-r differentials drop the A-degree by 2r-1, so r is bounded by
    // half the degree span; one step of margin.
    int span = b.algebra()->max_degree() - b.algebra()->min_degree();
    return (span + 2) / 2 + 1;
}

} // namespace

int default_truncation(const BVStructure& b)
{
    int r_bound = diff_reach(b);
    int m0 = (b.algebra()->degree_cap() + 1) / 2 + 1;
    return std::max({m0, 3 * r_bound + 1, 2});
}

SpectralSequence spectral_pages(const NegativeCyclicComplex& c)
{
    SpectralSequence ss;
    const int last = c.truncation() + 2;
    for (int r = 0; r <= last; ++r) {
        PageSlice s = compute_page(c, r, c.truncation(), true);
        SpectralPage page;
        page.r = r;
        page.dims = std::move(s.dims);
        page.bases = std::move(s.bases);
        ss.pages.push_back(std::move(page));
    }
    ss.stabilization_index = last;
    for (int r = last; r >= 0; --r) {
        if (ss.pages[static_cast<size_t>(r)].dims == ss.pages[static_cast<size_t>(last)].dims)
            ss.stabilization_index = r;
        else
            break;
    }
    return ss;
}

DegenerationCertificate degenerates_at_E1(const BVStructure& b, int max_truncation)
{
    DegenerationCertificate cert;
    const int r_bound = diff_reach(b);
    const int window = 2 * r_bound;
    int m_start = std::max(default_truncation(b), window + r_bound + 1);
    int cap = env_truncation_cap(max_truncation > 0 ? max_truncation : m_start + 8);
    cert.window = window;

    for (int M = m_start; M + 1 <= cap; ++M) {
        NegativeCyclicComplex cM = NegativeCyclicComplex::build(b, M);
        NegativeCyclicComplex cM1 = NegativeCyclicComplex::build(b, M + 1);
        auto e1 = compute_page(cM, 1, window, false).dims;
        auto einf = compute_page(cM, M + 2, window, false).dims;
        auto e1b = compute_page(cM1, 1, window, false).dims;
        auto einfb = compute_page(cM1, M + 3, window, false).dims;
        if (e1 != e1b || einf != einfb)
            continue; // not stabilized, enlarge the truncation
        cert.truncation = M;
        cert.e1_dims = std::move(e1);
        cert.einf_dims = std::move(einf);
        cert.verdict = cert.e1_dims == cert.einf_dims ? TriState::True : TriState::False;
        if (cert.verdict == TriState::False) {
            for (const auto& [pq, d1] : cert.e1_dims) {
                auto it = cert.einf_dims.find(pq);
                int di = it == cert.einf_dims.end() ? 0 : it->second;
                if (d1 != di) {
                    cert.detail = "dim E_1(" + std::to_string(pq.first) + "," +
                                  std::to_string(pq.second) + ") = " + std::to_string(d1) +
                                  " but dim E_inf = " + std::to_string(di);
                    break;
                }
            }
        }
        return cert;
    }
    cert.verdict = TriState::Inconclusive;
    cert.detail = "dimensions did not stabilize below the truncation cap";
    return cert;
}

FreenessCertificate u_freeness(const BVStructure& b, int truncation)
{
    FreenessCertificate cert;
    cert.truncation = truncation;
    NegativeCyclicComplex c = NegativeCyclicComplex::build(b, truncation);
    const FieldSpec& f = c.field();

    std::map<int, Homology> hom;
    for (int n = c.min_total(); n <= c.max_total(); ++n) {
        if (c.dim(n) == 0)
            continue;
        SparseMatrix d_in = c.differential(n - 1);
        SparseMatrix d_out = c.differential(n);
        hom.emplace(n, Homology(d_in, d_out));
    }

    int total = 0;
    for (const auto& [n, h] : hom)
        total += h.dim();
    cert.total_length = total;

    // u shifts a basis item one column to the right and kills the top column.
    auto u_apply = [&](int n, const Vec& x) {
        const auto& src = c.basis(n);
        const auto& tgt = c.basis(n + 2);
        std::map<std::pair<int, int>, int> pos;
        for (size_t k = 0; k < tgt.size(); ++k)
            pos[{tgt[k].j, tgt[k].idx}] = static_cast<int>(k);
        Vec y = zero_vec(f, static_cast<int>(tgt.size()));
        for (size_t k = 0; k < src.size(); ++k) {
            if (x[k].is_zero() || src[k].j + 1 > c.truncation())
                continue;
            auto it = pos.find({src[k].j + 1, src[k].idx});
            BTT_ASSERT(it != pos.end(), "u-shift target missing");
            y[static_cast<size_t>(it->second)] = x[k];
        }
        return y;
    };

    int gens = 0;
    for (const auto& [n, h] : hom) {
        int rank_u = 0;
        auto prev = hom.find(n - 2);
        if (prev != hom.end() && prev->second.dim() > 0 && h.dim() > 0) {
            std::vector<Vec> images;
            for (const Vec& rep : prev->second.representatives())
                images.push_back(h.project(u_apply(n - 2, rep)));
            rank_u = span_rank(images, h.dim(), f);
        }
        int g = h.dim() - rank_u;
        if (g > 0) {
            cert.generator_degrees[n] = g;
            gens += g;
        }
    }
    cert.generator_count = gens;
    cert.verdict =
        total == (truncation + 1) * gens ? TriState::True : TriState::False;
    if (cert.verdict == TriState::False)
        cert.detail = "K-length " + std::to_string(total) + " != (M+1) * generators = " +
                      std::to_string((truncation + 1) * gens);
    return cert;
}

FreenessCertificate u_freeness_auto(const BVStructure& b, int max_truncation)
{
    int m_start = default_truncation(b);
    int cap = env_truncation_cap(max_truncation > 0 ? max_truncation : m_start + 8);
    for (int M = m_start; M + 1 <= cap; ++M) {
        FreenessCertificate a = u_freeness(b, M);
        FreenessCertificate bb = u_freeness(b, M + 1);
        if (a.verdict == bb.verdict)
            return a;
    }
    FreenessCertificate cert;
    cert.verdict = TriState::Inconclusive;
    cert.detail = "freeness verdict did not stabilize below the truncation cap";
    return cert;
}

} // namespace btt

#include "btt/gallery.hpp"

#include "btt/linalg.hpp"
#include "btt/mc.hpp"

#include <sstream>

namespace btt {

namespace {

std::string canonical(const std::string& text)
{
    return print_document(parse_document(text));
}

GalleryEntry heisenberg_entry()
{
    GalleryEntry e;
    e.name = "heisenberg";
    e.description = "Chevalley-Eilenberg algebra of the 3-dimensional Heisenberg Lie algebra "
                    "with the contraction-by-bivector BV operator";
    e.document = canonical("field Q\n"
                           "generator e1 degree 1\n"
                           "generator e2 degree 1\n"
                           "generator e3 degree 1\n"
                           "cap 3\n"
                           "d e3 = 1 e1 e2\n"
                           "multivector pi arity 2 = 1 e1 e2\n"
                           "structure bv koszul pi\n");
    e.manifest = {
        {"verify", "pass"},
        {"betti", "1,2,2,1"},
        {"dd_lemma", "fail"},
        {"degeneration", "false"},
        {"u_freeness", "false"},
        {"mc_order8", "solved"},
        {"reduction_mod_5", "valid"},
        {"reduction_mod_7", "valid"},
    };
    return e;
}

GalleryEntry square_entry()
{
    GalleryEntry e;
    e.name = "square_bicomplex";
    e.description = "4-dimensional square {a, b=da, c=Δa, e=dΔa} with all products above the "
                    "degree cap";
    e.document = canonical("field Q\n"
                           "generator c degree 3\n"
                           "generator a degree 4 nilpotent 2\n"
                           "generator e degree 4 nilpotent 2\n"
                           "generator b degree 5\n"
                           "cap 5\n"
                           "d a = 1 b\n"
                           "d c = 1 e\n"
                           "operator Delta degree -1 { a -> 1 c ; b -> - 1 e ; }\n"
                           "structure bv delta Delta\n");
    e.manifest = {
        {"verify", "pass"},
        {"dd_lemma", "pass"},
        {"degeneration", "true"},
        {"u_freeness", "true"},
        {"zigzag", "valid"},
        {"induced_bracket", "zero"},
        {"reduction_mod_5", "valid"},
        {"reduction_mod_7", "valid"},
    };
    return e;
}

GalleryEntry abelian_torus_entry(int n)
{
    if (n <= 0)
        n = 3;
    BTT_REQUIRE(n >= 2 && n <= 8, "abelian_torus size must lie in [2, 8]");
    GalleryEntry e;
    e.name = "abelian_torus";
    e.description = "Exterior algebra on " + std::to_string(n) +
                    " degree-1 generators with zero differential and a constant bivector";
    std::ostringstream os;
    os << "field Q\n";
    for (int i = 1; i <= n; ++i)
        os << "generator e" << i << " degree 1\n";
    os << "cap " << n << "\n";
    os << "multivector pi arity 2 = 1 e1 e2\n";
    os << "structure bv koszul pi\n";
    e.document = canonical(os.str());
    e.manifest = {
        {"verify", "pass"},
        {"dd_lemma", "pass"},
        {"degeneration", "true"},
        {"u_freeness", "true"},
        {"zigzag", "valid"},
        {"induced_bracket", "zero"},
        {"mc_order8", "solved"},
        {"reduction_mod_5", "valid"},
        {"reduction_mod_7", "valid"},
    };
    return e;
}

GalleryEntry jacobi_entry()
{
    GalleryEntry e;
    e.name = "jacobi_example";
    e.description = "Heisenberg Chevalley-Eilenberg algebra with the bivector-vector pair "
                    "satisfying [pi,pi] = 2 eta∧pi and [pi,eta] = 0";
    e.document = canonical("field Q\n"
                           "generator e1 degree 1\n"
                           "generator e2 degree 1\n"
                           "generator e3 degree 1\n"
                           "cap 3\n"
                           "d e3 = 1 e1 e2\n"
                           "multivector pi arity 2 = 1 e1 e2\n"
                           "multivector eta arity 1 = 1 e3\n"
                           "structure bv_infinity jacobi pi eta\n");
    e.manifest = {
        {"verify", "pass"},
        {"delta2", "nonzero"},
        {"reduction_mod_5", "valid"},
        {"reduction_mod_7", "valid"},
    };
    return e;
}

GalleryEntry hermitian_entry()
{
    GalleryEntry e;
    e.name = "hermitian_demo";
    e.description = "Bigraded two-form model exercising adjoints and conjugation by an almost "
                    "complex structure; operator-calculus demonstration only";
    e.document = canonical("field Q\n"
                           "generator x degree 1 bidegree 1 0\n"
                           "generator y degree 1 bidegree 0 1\n"
                           "generator z degree 2 bidegree 1 1 nilpotent 2\n"
                           "cap 2\n"
                           "d x = 1 z\n"
                           "operator J degree 0 { 1 -> 1 ; x -> 1 y ; y -> - 1 x ; "
                           "z -> 1 z ; x y -> 1 x y ; }\n"
                           "operator Zero degree -1 { }\n"
                           "structure bv delta Zero\n");
    e.manifest = {
        {"demonstration", "only"},
        {"verify", "pass"},
        {"conjugated_differential", "square-zero"},
        {"adjoint_involution", "true"},
        {"degeneration", "true"},
    };
    return e;
}

GalleryEntry complex_torus_entry(int n)
{
    if (n <= 0)
        n = 2;
    BTT_REQUIRE(n >= 1 && n <= 4, "complex_torus dimension must lie in [1, 4]");
    GalleryEntry e;
    e.name = "complex_torus";
    e.description = "Constant polyvector-form bigraded model of a complex torus of dimension " +
                    std::to_string(n) + "; d = 0, Δ = 0";
    std::ostringstream os;
    os << "field Q\n";
    for (int i = 1; i <= n; ++i)
        os << "generator t" << i << " degree 1 bidegree 1 0\n";
    for (int i = 1; i <= n; ++i)
        os << "generator s" << i << " degree 1 bidegree 0 1\n";
    os << "cap " << 2 * n << "\n";
    os << "operator Zero degree -1 { }\n";
    os << "structure dg_lie delta Zero column 1\n";
    e.document = canonical(os.str());
    e.manifest = {
        {"verify", "pass"},
        {"column_closed", "true"},
        {"degeneration", "true"},
        {"u_freeness", "true"},
        {"mc_order8", "solved"},
        {"reduction_mod_5", "valid"},
        {"reduction_mod_7", "valid"},
    };
    return e;
}

// Base algebras scanned by the obstruction search: document text without a
// structure line, plus the degree the Maurer-Cartan classes live in.
std::vector<std::string> search_catalog()
{
    return {
        // Heisenberg CE algebra.
        "field Q\n"
        "generator e1 degree 1\n"
        "generator e2 degree 1\n"
        "generator e3 degree 1\n"
        "cap 3\n"
        "d e3 = 1 e1 e2\n",
        // Abelian 3-torus.
        "field Q\n"
        "generator e1 degree 1\n"
        "generator e2 degree 1\n"
        "generator e3 degree 1\n"
        "cap 3\n",
    };
}

struct DeltaSpace {
    // Entry positions of all degree -1 blocks and the admissible directions.
    std::vector<std::tuple<int, int, int>> positions; // (source degree, row, col)
    std::vector<GradedOperator> directions;
};

GradedOperator op_from_coords(const AlgebraRef& alg,
                              const std::vector<std::tuple<int, int, int>>& positions,
                              const Vec& coords)
{
    GradedOperator t(alg, -1);
    std::map<int, SparseMatrix> blocks;
    for (size_t k = 0; k < positions.size(); ++k) {
        if (coords[k].is_zero())
            continue;
        auto [n, r, c] = positions[k];
        auto it = blocks.find(n);
        if (it == blocks.end())
            it = blocks.emplace(n, SparseMatrix(alg->field(), alg->dim(n - 1), alg->dim(n))).first;
        it->second.add_to(r, c, coords[k]);
    }
    for (auto& [n, m] : blocks)
        t.set_block(n, m);
    return t;
}

// Degree -1 operators with [d,Δ] = 0 and vanishing triple multiplication
// commutators (order <= 2); both constraints are linear in Δ.
DeltaSpace admissible_deltas(const AlgebraRef& alg, const GradedOperator& d)
{
    DeltaSpace space;
    for (int n = alg->min_degree(); n <= alg->max_degree(); ++n)
        for (int r = 0; r < alg->dim(n - 1); ++r)
            for (int c = 0; c < alg->dim(n); ++c)
                space.positions.push_back({n, r, c});
    const int w = static_cast<int>(space.positions.size());
    if (w == 0)
        return space;

    std::vector<GradedOperator> mults;
    for (size_t i = 0; i < alg->num_generators(); ++i)
        mults.push_back(multiplication_operator(Element::generator(alg, i)));

    std::vector<Vec> rows; // constraint rows over the unknowns
    auto add_constraints = [&](const std::vector<GradedOperator>& images) {
        // One row per (operator-degree block, entry) over all unknowns.
        std::map<std::tuple<int, int, int>, Vec> by_entry;
        for (int k = 0; k < w; ++k) {
            const GradedOperator& img = images[static_cast<size_t>(k)];
            for (const auto& [n, block] : img.blocks())
                for (int i = 0; i < block.rows(); ++i)
                    for (const auto& [j, v] : block.row(i)) {
                        auto key = std::make_tuple(n, i, j);
                        auto it = by_entry.find(key);
                        if (it == by_entry.end())
                            it = by_entry.emplace(key, zero_vec(alg->field(), w)).first;
                        it->second[static_cast<size_t>(k)] = v;
                    }
        }
        for (auto& [key, row] : by_entry)
            rows.push_back(std::move(row));
    };

    std::vector<GradedOperator> units;
    for (int k = 0; k < w; ++k) {
        Vec e = zero_vec(alg->field(), w);
        e[static_cast<size_t>(k)] = Scalar::one(alg->field());
        units.push_back(op_from_coords(alg, space.positions, e));
    }

    {
        std::vector<GradedOperator> images;
        for (const auto& u : units)
            images.push_back(graded_commutator(d, u));
        add_constraints(images);
    }
    for (const auto& g : mults)
        for (const auto& h : mults)
            for (const auto& kk : mults) {
                std::vector<GradedOperator> images;
                for (const auto& u : units)
                    images.push_back(graded_commutator(
                        graded_commutator(graded_commutator(u, g), h), kk));
                add_constraints(images);
            }

    SparseMatrix M = SparseMatrix::from_rows(alg->field(), rows, w);
    for (const Vec& kv : kernel_basis(M))
        space.directions.push_back(op_from_coords(alg, space.positions, kv));
    return space;
}

} // namespace

ObstructedSearchResult obstructed_search()
{
    ObstructedSearchResult result;
    for (const std::string& base_text : search_catalog()) {
        InputDocument doc = parse_document(base_text);
        const AlgebraRef& alg = doc.algebra;
        const FieldSpec& f = alg->field();
        GradedOperator d = doc.differential();

        DeltaSpace space = admissible_deltas(alg, d);
        const int w = static_cast<int>(space.directions.size());
        if (w == 0)
            continue;

        Homology h1(d.block_or_zero(1), d.block_or_zero(2));
        if (h1.dim() == 0 || alg->dim(3) == 0)
            continue;

        // The bracket against a fixed Δ, directly from the defining relation.
        auto bracket = [&](const GradedOperator& delta, const Element& x, const Element& y) {
            Element out(alg);
            for (const auto& [p, a] : x.decompose()) {
                Element n = delta(a * y) - delta(a) * y;
                Element last = a * delta(y);
                n = (p % 2) ? n + last : n - last;
                out = out + ((p % 2) ? -n : n);
            }
            return out;
        };

        auto try_candidate = [&](const Vec& coords) -> bool {
            GradedOperator delta = GradedOperator::zero(alg, -1);
            for (int i = 0; i < w; ++i)
                if (!coords[static_cast<size_t>(i)].is_zero())
                    delta = delta +
                            space.directions[static_cast<size_t>(i)].scaled(coords[static_cast<size_t>(i)]);
            ++result.candidates_tried;
            if (delta.is_zero() || !(delta * delta).is_zero())
                return false;
            for (int ci = 0; ci < h1.dim(); ++ci) {
                Element xi = Element::from_coords(alg, 2, h1.representatives()[static_cast<size_t>(ci)]);
                Element r2 = bracket(delta, xi, xi).scaled(-(Scalar(f, 1) / Scalar(f, 2)));
                if (r2.is_zero())
                    continue;
                if (solve(d.block_or_zero(2), r2.coords(3)).has_value())
                    continue;
                // Confirm through the full pipeline before accepting.
                std::vector<GradedOperator> deltas{delta};
                BVStructure b = BVStructure::make(alg, d, std::move(deltas));
                if (!verify_bv(b).pass())
                    return false;
                DgLie l = to_dg_lie(b, false, false);
                McOutcome out = solve_mc(l, h1.project(xi.coords(2)), 2);
                if (mc_solved(out))
                    return false;
                const Obstruction& ob = std::get<Obstruction>(out);

                // Emit the document with the found Δ.
                std::ostringstream os;
                os << base_text;
                os << "operator Delta degree -1 {\n";
                for (int n = alg->min_degree(); n <= alg->max_degree(); ++n)
                    for (int col = 0; col < alg->dim(n); ++col) {
                        Element img(alg);
                        const SparseMatrix& blk = delta.block(n);
                        if (blk.rows() == 0)
                            continue;
                        Vec v = blk.col_vec(col);
                        if (vec_is_zero(v))
                            continue;
                        img = Element::from_coords(alg, n - 1, v);
                        os << "  " << alg->monomial_str(alg->basis(n)[static_cast<size_t>(col)])
                           << " -> " << img.str() << " ;\n";
                    }
                os << "}\n";
                os << "structure dg_lie delta Delta\n";
                result.found = true;
                result.document = canonical(os.str());
                result.class_index = ci;
                result.order = ob.order;
                return true;
            }
            return false;
        };

        // Enumerate admissible combinations by increasing support.
        std::vector<int> idx;
        std::function<bool(int, int)> enumerate = [&](int start, int remaining) -> bool {
            if (remaining == 0) {
                std::vector<int> signs(idx.size(), 0);
                std::function<bool(size_t)> sweep = [&](size_t pos) -> bool {
                    if (pos == idx.size()) {
                        Vec coords = zero_vec(f, w);
                        for (size_t s = 0; s < idx.size(); ++s)
                            coords[static_cast<size_t>(idx[s])] =
                                signs[s] ? -Scalar::one(f) : Scalar::one(f);
                        // Impose +1 on the first support slot to skip global negations.
                        if (!idx.empty() && signs[0])
                            return false;
                        return try_candidate(coords);
                    }
                    for (int sgn = 0; sgn < 2; ++sgn) {
                        signs[pos] = sgn;
                        if (sweep(pos + 1))
                            return true;
                    }
                    return false;
                };
                return sweep(0);
            }
            for (int i = start; i <= w - remaining; ++i) {
                idx.push_back(i);
                if (enumerate(i + 1, remaining - 1))
                    return true;
                idx.pop_back();
            }
            return false;
        };
        for (int support = 1; support <= std::min(w, 3); ++support) {
            idx.clear();
            if (enumerate(0, support))
                return result;
        }
    }
    return result;
}

namespace {

GalleryEntry obstructed_entry()
{
    ObstructedSearchResult r = obstructed_search();
    if (!r.found)
        throw input_error("obstructed_dglie: the bounded search found no obstructed structure");
    GalleryEntry e;
    e.name = "obstructed_dglie";
    e.description = "BV structure on a small Chevalley-Eilenberg algebra whose Maurer-Cartan "
                    "recursion obstructs at order 2 (found by the shipped bounded search)";
    e.document = r.document;
    e.manifest = {
        {"verify", "pass"},
        {"obstruction_class", std::to_string(r.class_index)},
        {"obstruction_order", std::to_string(r.order)},
        {"h2_nonzero", "true"},
        {"degeneration", "false"},
    };
    return e;
}

} // namespace

std::vector<std::string> gallery_names()
{
    return {"heisenberg",       "square_bicomplex", "abelian_torus", "jacobi_example",
            "obstructed_dglie", "hermitian_demo",   "complex_torus"};
}

GalleryEntry gallery_entry(const std::string& name, int n)
{
    if (name == "heisenberg")
        return heisenberg_entry();
    if (name == "square_bicomplex")
        return square_entry();
    if (name == "abelian_torus")
        return abelian_torus_entry(n);
    if (name == "jacobi_example")
        return jacobi_entry();
    if (name == "obstructed_dglie")
        return obstructed_entry();
    if (name == "hermitian_demo")
        return hermitian_entry();
    if (name == "complex_torus")
        return complex_torus_entry(n);
    throw input_error("unknown gallery entry '" + name + "'");
}

} // namespace btt

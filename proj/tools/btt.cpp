#include "btt/cyclic.hpp"
#include "btt/format.hpp"
#include "btt/gallery.hpp"
#include "btt/mc.hpp"
#include "btt/quasiabelian.hpp"
#include "btt/report.hpp"
#include "btt/transfer.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace btt;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

std::string read_input(const std::string& path)
{
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f)
        throw input_error("cannot open input file '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void emit(const Report& rep, const std::string& out)
{
    if (out.empty()) {
        std::cout << rep.str();
    } else {
        std::ofstream f(out);
        if (!f)
            throw input_error("cannot open output file '" + out + "'");
        f << rep.str();
    }
}

void emit_checks(Report& rep, const VerifyReport& vr)
{
    for (const auto& c : vr.checks)
        rep.kv("check " + c.name, c.pass ? "pass" : "fail (" + c.witness + ")");
}

std::string element_str(const AlgebraRef& alg, int degree, const Vec& coords)
{
    return Element::from_coords(alg, degree, coords).str();
}

Vec parse_class(const FieldSpec& f, const std::string& text)
{
    Vec out;
    std::string tok;
    std::istringstream is(text);
    while (std::getline(is, tok, ','))
        out.push_back(Scalar::parse(f, tok));
    return out;
}

int finish(Report& rep, const std::string& out, bool pass)
{
    rep.set_status(pass ? "pass" : "fail");
    emit(rep, out);
    return pass ? kExitPass : kExitFail;
}

int cmd_verify(const InputDocument& doc, const std::string& text, const std::string& out)
{
    Report rep("verify", text);
    try {
        switch (doc.structure.kind) {
        case StructureDecl::Kind::Bv: {
            BVStructure b = make_bv_structure(doc);
            VerifyReport vr = verify_bv(b);
            emit_checks(rep, vr);
            return finish(rep, out, vr.pass());
        }
        case StructureDecl::Kind::BvInfinity: {
            BVStructure b = make_bv_structure(doc);
            VerifyReport vr = verify_bv_infinity(b);
            emit_checks(rep, vr);
            bool ok = vr.pass();
            if (b.lambda()) {
                VerifyReport conj = verify_conjugation_identity(b);
                emit_checks(rep, conj);
                ok = ok && conj.pass();
            }
            rep.kv("deltas", std::to_string(b.deltas().size()));
            return finish(rep, out, ok);
        }
        case StructureDecl::Kind::DgLie: {
            DgLie l = make_dg_lie(doc);
            for (const auto& [n, dim] : l.dims())
                rep.kv("dim L^" + std::to_string(n), std::to_string(dim));
            rep.kv("check dg-lie-axioms", "pass");
            return finish(rep, out, true);
        }
        default:
            throw input_error("input document declares no structure");
        }
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_ddlemma(const InputDocument& doc, const std::string& text, const std::string& out)
{
    Report rep("ddlemma", text);
    try {
        BVStructure b = make_bv_structure(doc);
        DdCertificate cert = dd_lemma(b);
        for (const auto& [n, data] : cert.degrees) {
            std::string tag = "degree " + std::to_string(n);
            rep.kv(tag + " dim Ker(d)∩Im(Δ)", std::to_string(data.ker_d_im_delta.size()));
            rep.kv(tag + " dim Ker(Δ)∩Im(d)", std::to_string(data.ker_delta_im_d.size()));
            rep.kv(tag + " dim Im(dΔ)", std::to_string(data.im_d_delta.size()));
            rep.kv(tag + " equal", data.equal ? "yes" : "no");
            for (const auto& v : data.ker_d_im_delta)
                rep.kv(tag + " basis Ker(d)∩Im(Δ)", vec_str(v));
            for (const auto& v : data.ker_delta_im_d)
                rep.kv(tag + " basis Ker(Δ)∩Im(d)", vec_str(v));
            for (const auto& v : data.im_d_delta)
                rep.kv(tag + " basis Im(dΔ)", vec_str(v));
        }
        if (cert.failing_degree)
            rep.kv("failing-degree", std::to_string(*cert.failing_degree));
        return finish(rep, out, cert.pass);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_degeneration(const InputDocument& doc, const std::string& text, const std::string& out)
{
    Report rep("degeneration", text);
    try {
        BVStructure b = make_bv_structure(doc);
        DegenerationCertificate dc = degenerates_at_E1(b);
        FreenessCertificate fc = u_freeness_auto(b);
        rep.kv("degenerates-at-E1", tristate_str(dc.verdict));
        rep.kv("truncation", std::to_string(dc.truncation));
        rep.kv("window", "p <= " + std::to_string(dc.window));
        for (const auto& [pq, dim] : dc.e1_dims)
            rep.kv("dim E_1(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")",
                   std::to_string(dim));
        for (const auto& [pq, dim] : dc.einf_dims)
            rep.kv("dim E_inf(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ")",
                   std::to_string(dim));
        if (!dc.detail.empty())
            rep.kv("detail", dc.detail);
        rep.kv("u-freeness", tristate_str(fc.verdict));
        rep.kv("u-total-length", std::to_string(fc.total_length));
        rep.kv("u-generators", std::to_string(fc.generator_count));
        for (const auto& [deg, g] : fc.generator_degrees)
            rep.kv("u-generators degree " + std::to_string(deg), std::to_string(g));
        if (!fc.detail.empty())
            rep.kv("u-detail", fc.detail);

        if (dc.verdict == TriState::Inconclusive || fc.verdict == TriState::Inconclusive) {
            rep.set_status("inconclusive");
            emit(rep, out);
            return kExitFail;
        }
        return finish(rep, out,
                      dc.verdict == TriState::True && fc.verdict == TriState::True);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_quasiabelian(const InputDocument& doc, const std::string& text, const std::string& out)
{
    Report rep("quasiabelian", text);
    try {
        BVStructure b = make_bv_structure(doc);
        DdCertificate dd = dd_lemma(b);
        rep.kv("dd-lemma", dd.pass ? "pass" : "fail");
        if (!dd.pass) {
            rep.kv("failing-degree", std::to_string(*dd.failing_degree));
            return finish(rep, out, false);
        }
        ZigZagCertificate zz = zigzag_certificate(b);
        rep.kv("zigzag", zz.valid ? "valid" : "invalid");
        rep.kv("subcomplex", zz.subcomplex ? "yes" : "no");
        rep.kv("inclusion-chain-map", zz.inclusion_chain_map ? "yes" : "no");
        rep.kv("projection-chain-map", zz.projection_chain_map ? "yes" : "no");
        rep.kv("inclusion-quasi-iso", zz.inclusion_qis ? "yes" : "no");
        rep.kv("projection-quasi-iso", zz.projection_qis ? "yes" : "no");
        rep.kv("brackets-into-Im-delta", zz.brackets_in_im_delta ? "yes" : "no");
        for (const auto& [n, betti] : zz.betti_A)
            rep.kv("betti A degree " + std::to_string(n), std::to_string(betti));
        for (const auto& [n, betti] : zz.betti_K)
            rep.kv("betti KerΔ degree " + std::to_string(n), std::to_string(betti));
        for (const auto& [n, betti] : zz.betti_H)
            rep.kv("dim H_Δ degree " + std::to_string(n), std::to_string(betti));
        for (const auto& [n, basis] : zz.ker_delta)
            for (const auto& v : basis)
                rep.kv("basis KerΔ degree " + std::to_string(n), vec_str(v));
        InducedBracket ib = induced_bracket_on_homology(b);
        rep.kv("induced-bracket", ib.is_zero ? "zero" : "nonzero");
        return finish(rep, out, zz.valid && ib.is_zero);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_deform(const InputDocument& doc, const std::string& text, const std::string& out,
               const std::string& cls, int order, const std::string& method)
{
    Report rep("deform", text);
    try {
        rep.kv("order", std::to_string(order));
        rep.kv("method", method);
        if (method == "tt") {
            BVStructure b = make_bv_structure(doc);
            Vec alpha = parse_class(doc.field, cls);
            DeformationSeries s = tt_solve_mc(b, alpha, order);
            rep.kv("solved", "yes");
            if (s.tt_fallback)
                rep.kv("tt-fallback", "generic solver used (no Ker(Δ) representative)");
            for (size_t k = 0; k < s.coefficients.size(); ++k)
                rep.kv("xi " + std::to_string(k + 1),
                       vec_str(s.coefficients[k]) + " = " +
                           element_str(doc.algebra, 2, s.coefficients[k]));
            return finish(rep, out, true);
        }
        DgLie l = make_dg_lie(doc);
        Vec alpha = parse_class(doc.field, cls);
        McOutcome o = solve_mc(l, alpha, order, McMode::Pivot);
        if (mc_solved(o)) {
            const auto& s = std::get<DeformationSeries>(o);
            rep.kv("solved", "yes");
            for (size_t k = 0; k < s.coefficients.size(); ++k)
                rep.kv("xi " + std::to_string(k + 1), vec_str(s.coefficients[k]));
            return finish(rep, out, true);
        }
        const auto& ob = std::get<Obstruction>(o);
        rep.kv("solved", "no");
        rep.kv("obstruction-order", std::to_string(ob.order));
        rep.kv("obstruction-rhs", vec_str(ob.rhs));
        rep.kv("obstruction-class", vec_str(ob.h2_class));
        return finish(rep, out, false);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_charp(const InputDocument& doc_in, const std::string& text, const std::string& out,
              std::uint32_t p)
{
    Report rep("charp", text);
    try {
        InputDocument doc = doc_in.field.is_rationals()
                                ? reduce_document_mod(doc_in, p)
                                : doc_in;
        if (!doc.field.is_rationals() && doc.field.characteristic() != p)
            throw input_error("input field " + doc.field.str() + " does not match --p " +
                              std::to_string(p));
        DgLie l = make_dg_lie(doc);
        CharPReport pr = char_p_probe(l);
        rep.kv("p", std::to_string(pr.p));
        rep.kv("order", std::to_string(pr.order));
        for (size_t i = 0; i < pr.classes.size(); ++i) {
            const auto& c = pr.classes[i];
            if (mc_solved(c.outcome)) {
                rep.kv("class " + std::to_string(i) + " " + vec_str(c.alpha), "solved");
            } else {
                const auto& ob = std::get<Obstruction>(c.outcome);
                rep.kv("class " + std::to_string(i) + " " + vec_str(c.alpha),
                       "obstructed at order " + std::to_string(ob.order) + ", class " +
                           vec_str(ob.h2_class));
            }
        }
        return finish(rep, out, pr.all_solved);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

int cmd_transfer(const InputDocument& doc, const std::string& text, const std::string& out,
                 int arity)
{
    Report rep("transfer", text);
    try {
        if (!doc.field.is_rationals())
            throw input_error("transfer runs in characteristic 0");
        DgLie l = make_dg_lie(doc);
        Contraction c = build_contraction(l);
        TransferredBrackets tb = transferred_brackets(l, c, arity);
        for (const auto& [n, hd] : c.hdims)
            if (hd > 0)
                rep.kv("dim H^" + std::to_string(n), std::to_string(hd));
        for (int k = 2; k <= arity; ++k) {
            rep.kv("l" + std::to_string(k), tb.arity_is_zero(k) ? "zero" : "nonzero");
            auto it = tb.values.find(k);
            if (it == tb.values.end())
                continue;
            for (const auto& [key, v] : it->second) {
                if (vec_is_zero(v))
                    continue;
                std::string args;
                for (const auto& [deg, idx] : key)
                    args += (args.empty() ? "" : " , ") + std::string("H^") +
                            std::to_string(deg) + "[" + std::to_string(idx) + "]";
                rep.kv("l" + std::to_string(k) + "(" + args + ")", vec_str(v));
            }
        }
        return finish(rep, out, true);
    } catch (const input_error& e) {
        rep.kv("error", e.what());
        return finish(rep, out, false);
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"btt — exact verification of BV/BV∞ structures, degeneration "
                 "certificates and Maurer-Cartan deformation solving"};
    app.require_subcommand(1);

    std::string file = "-", out;
    std::string cls = "";
    std::string method = "generic";
    int order = 8, arity = 4, gallery_n = 0;
    std::uint32_t p = 0;
    std::string gallery_name;
    bool gallery_list = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", file, "input file ('-' = stdin)");
        cmd->add_option("--out", out, "write the report to this path");
    };
    CLI::App* verify = app.add_subcommand("verify", "verify the declared structure's axioms");
    add_common(verify);
    CLI::App* ddlemma = app.add_subcommand("ddlemma", "check the dΔ-lemma subspace identities");
    add_common(ddlemma);
    CLI::App* degen = app.add_subcommand("degeneration",
                                         "decide E1-degeneration and u-freeness");
    add_common(degen);
    CLI::App* quasi = app.add_subcommand("quasiabelian",
                                         "dΔ-lemma, zig-zag certificate and induced bracket");
    add_common(quasi);
    CLI::App* deform = app.add_subcommand("deform", "solve the Maurer-Cartan system");
    add_common(deform);
    deform->add_option("--class", cls, "H^1 class coordinates, comma separated")->required();
    deform->add_option("--order", order, "truncation order (default 8)");
    deform->add_option("--method", method, "generic | tt")
        ->check(CLI::IsMember({"generic", "tt"}));
    CLI::App* charp = app.add_subcommand("charp", "Maurer-Cartan probe to order p-1 over F_p");
    add_common(charp);
    charp->add_option("--p", p, "prime characteristic (>= 5)")->required();
    CLI::App* transfer = app.add_subcommand("transfer", "transferred L∞ brackets on homology");
    add_common(transfer);
    transfer->add_option("--arity", arity, "highest transferred arity (2..4)");
    CLI::App* gallery = app.add_subcommand("gallery", "emit a built-in example input");
    gallery->add_option("name", gallery_name, "entry name");
    gallery->add_option("--n", gallery_n, "size parameter for the torus entries");
    gallery->add_flag("--list", gallery_list, "list entry names");
    gallery->add_option("--out", out, "write the document to this path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        app.exit(e);
        return kExitInput;
    }

    try {
        if (gallery->parsed()) {
            if (gallery_list) {
                for (const auto& n : gallery_names())
                    std::cout << n << "\n";
                return kExitPass;
            }
            if (gallery_name.empty())
                throw input_error("gallery needs an entry name or --list");
            GalleryEntry e = gallery_entry(gallery_name, gallery_n);
            std::ostringstream os;
            os << "# " << e.name << ": " << e.description << "\n";
            for (const auto& [k, v] : e.manifest)
                os << "# property " << k << ": " << v << "\n";
            os << e.document;
            if (out.empty()) {
                std::cout << os.str();
            } else {
                std::ofstream f(out);
                if (!f)
                    throw input_error("cannot open output file '" + out + "'");
                f << os.str();
            }
            return kExitPass;
        }

        std::string text = read_input(file);
        InputDocument doc = parse_document(text);

        if (verify->parsed())
            return cmd_verify(doc, text, out);
        if (ddlemma->parsed())
            return cmd_ddlemma(doc, text, out);
        if (degen->parsed())
            return cmd_degeneration(doc, text, out);
        if (quasi->parsed())
            return cmd_quasiabelian(doc, text, out);
        if (deform->parsed())
            return cmd_deform(doc, text, out, cls, order, method);
        if (charp->parsed()) {
            if (!is_prime(p) || p < 5)
                throw input_error("--p must be a prime >= 5");
            if (!doc.field.is_rationals() && doc.field.characteristic() != p)
                throw input_error("input field " + doc.field.str() + " does not match --p " +
                                  std::to_string(p));
            return cmd_charp(doc, text, out, p);
        }
        if (transfer->parsed()) {
            if (arity < 2 || arity > 4)
                throw input_error("--arity must lie in [2, 4]");
            if (!doc.field.is_rationals())
                throw input_error("transfer runs in characteristic 0");
            return cmd_transfer(doc, text, out, arity);
        }
        throw input_error("no command given");
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInput;
    }
}

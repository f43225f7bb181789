#include "btt/format.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace btt {

namespace {

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw input_error("line " + std::to_string(line) + ": " + msg);
}

bool is_integer(const std::string& s)
{
    static const std::regex re("^-?[0-9]+$");
    return std::regex_match(s, re);
}

bool is_coefficient(const std::string& s)
{
    static const std::regex re("^-?[0-9]+(/[0-9]+)?$");
    return std::regex_match(s, re);
}

std::vector<std::string> tokenize(const std::string& s)
{
    std::string padded;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '{' || s[i] == '}' || s[i] == ';' || s[i] == '=') {
            padded += ' ';
            padded += s[i];
            padded += ' ';
        } else if (s[i] == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            padded += " -> ";
            ++i;
        } else {
            padded += s[i];
        }
    }
    std::vector<std::string> out;
    std::istringstream is(padded);
    std::string tok;
    while (is >> tok)
        out.push_back(tok);
    return out;
}

struct Statement {
    int line;
    std::vector<std::string> tokens;
};

std::vector<Statement> split_statements(const std::string& text)
{
    std::vector<std::string> lines;
    {
        std::istringstream is(text);
        std::string line;
        while (std::getline(is, line))
            lines.push_back(line);
    }
    std::vector<Statement> out;
    for (size_t i = 0; i < lines.size(); ++i) {
        std::string s = lines[i];
        auto hash = s.find('#');
        if (hash != std::string::npos)
            s = s.substr(0, hash);
        auto toks = tokenize(s);
        if (toks.empty())
            continue;
        int start = static_cast<int>(i) + 1;
        if (toks[0] == "operator") {
            // Collect lines until the closing brace.
            while (std::find(toks.begin(), toks.end(), "}") == toks.end()) {
                if (++i >= lines.size())
                    fail(start, "operator block is missing its closing '}'");
                std::string cont = lines[i];
                auto h = cont.find('#');
                if (h != std::string::npos)
                    cont = cont.substr(0, h);
                auto more = tokenize(cont);
                toks.insert(toks.end(), more.begin(), more.end());
            }
        }
        out.push_back({start, std::move(toks)});
    }
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : statements_(split_statements(text)) {}

    InputDocument run()
    {
        for (const auto& st : statements_)
            dispatch(st);
        if (!doc_.algebra)
            finalize_algebra(statements_.empty() ? 1 : statements_.back().line);
        canonicalize();
        return std::move(doc_);
    }

private:
    void dispatch(const Statement& st)
    {
        const std::string& head = st.tokens[0];
        if (head == "field")
            parse_field(st);
        else if (head == "generator")
            parse_generator(st);
        else if (head == "cap")
            parse_cap(st);
        else if (head == "d")
            parse_differential(st);
        else if (head == "operator")
            parse_operator(st);
        else if (head == "multivector")
            parse_multivector(st);
        else if (head == "structure")
            parse_structure(st);
        else
            fail(st.line, "unknown statement '" + head + "'");
    }

    void need_declarations_open(const Statement& st)
    {
        if (doc_.algebra)
            fail(st.line, "'" + st.tokens[0] + "' must precede every operator statement");
    }

    void finalize_algebra(int line)
    {
        try {
            doc_.algebra = Algebra::make(doc_.field, doc_.gens,
                                         doc_.cap_explicit ? std::optional<int>(doc_.cap)
                                                           : std::nullopt);
        } catch (const input_error& e) {
            fail(line, e.what());
        }
        doc_.cap = doc_.algebra->degree_cap();
    }

    void ensure_algebra(const Statement& st)
    {
        if (!doc_.algebra)
            finalize_algebra(st.line);
    }

    void parse_field(const Statement& st)
    {
        need_declarations_open(st);
        if (st.tokens.size() == 2 && st.tokens[1] == "Q")
            doc_.field = FieldSpec::rationals();
        else if (st.tokens.size() == 3 && st.tokens[1] == "F" && is_integer(st.tokens[2])) {
            try {
                doc_.field = FieldSpec::prime_field(static_cast<std::uint32_t>(std::stoul(st.tokens[2])));
            } catch (const input_error& e) {
                fail(st.line, e.what());
            }
        } else
            fail(st.line, "expected 'field Q' or 'field F <p>'");
    }

    void parse_generator(const Statement& st)
    {
        need_declarations_open(st);
        const auto& t = st.tokens;
        if (t.size() < 4 || t[2] != "degree" || !is_integer(t[3]))
            fail(st.line, "expected 'generator <name> degree <d> [bidegree <p> <q>] [nilpotent <e>]'");
        GeneratorDecl g;
        g.name = t[1];
        g.degree = std::stoi(t[3]);
        size_t i = 4;
        while (i < t.size()) {
            if (t[i] == "bidegree" && i + 2 < t.size() && is_integer(t[i + 1]) && is_integer(t[i + 2])) {
                g.bidegree = {std::stoi(t[i + 1]), std::stoi(t[i + 2])};
                i += 3;
            } else if (t[i] == "nilpotent" && i + 1 < t.size() && is_integer(t[i + 1])) {
                g.nilpotent = std::stoi(t[i + 1]);
                i += 2;
            } else
                fail(st.line, "bad generator attribute '" + t[i] + "'");
        }
        doc_.gens.push_back(std::move(g));
    }

    void parse_cap(const Statement& st)
    {
        need_declarations_open(st);
        if (st.tokens.size() != 2 || !is_integer(st.tokens[1]))
            fail(st.line, "expected 'cap <D>'");
        doc_.cap = std::stoi(st.tokens[1]);
        doc_.cap_explicit = true;
    }

    Scalar parse_coefficient(const std::vector<std::string>& t, size_t& i, int line)
    {
        // "a", "a/b", or "a mod p".
        std::string lit = t[i++];
        if (i + 1 < t.size() && t[i] == "mod" && is_integer(t[i + 1])) {
            std::uint32_t p = static_cast<std::uint32_t>(std::stoul(t[i + 1]));
            if (p != doc_.field.characteristic())
                fail(line, "coefficient modulus " + std::to_string(p) + " does not match the field " +
                               doc_.field.str());
            i += 2;
        }
        if (lit.find('/') != std::string::npos && !doc_.field.is_rationals())
            fail(line, "fractional coefficient '" + lit + "' over " + doc_.field.str());
        try {
            return Scalar::parse(doc_.field, lit);
        } catch (const input_error& e) {
            fail(line, e.what());
        }
    }

    // Parses tokens [from, to) as a ±-separated element expression.
    Element parse_element(const std::vector<std::string>& t, size_t from, size_t to, int line)
    {
        Element out(doc_.algebra);
        if (to - from == 1 && t[from] == "0")
            return out;
        size_t i = from;
        bool first = true;
        while (i < to) {
            Scalar sign = Scalar::one(doc_.field);
            if (t[i] == "+" || t[i] == "-") {
                if (t[i] == "-")
                    sign = -sign;
                ++i;
            } else if (!first)
                fail(line, "expected '+' or '-' before '" + t[i] + "'");
            first = false;
            if (i >= to)
                fail(line, "dangling sign in expression");
            Scalar coef = Scalar::one(doc_.field);
            if (is_coefficient(t[i]))
                coef = parse_coefficient(t, i, line);
            std::vector<int> exps(doc_.algebra->num_generators(), 0);
            bool any_name = false;
            while (i < to && t[i] != "+" && t[i] != "-") {
                int gi = doc_.algebra->generator_index(t[i]);
                if (gi < 0)
                    fail(line, "unknown generator '" + t[i] + "'");
                exps[static_cast<size_t>(gi)] += 1;
                any_name = true;
                ++i;
            }
            Monomial m(exps);
            if (!doc_.algebra->in_basis(m))
                fail(line, "monomial '" + doc_.algebra->monomial_str(m) +
                               "' lies outside the algebra basis (nilpotency or degree cap)");
            (void)any_name;
            out = out + Element(doc_.algebra, m, sign * coef);
        }
        return out;
    }

    Monomial parse_monomial(const std::vector<std::string>& t, size_t from, size_t to, int line)
    {
        std::vector<int> exps(doc_.algebra->num_generators(), 0);
        for (size_t i = from; i < to; ++i) {
            if (t[i] == "1" && to - from == 1)
                break; // the unit monomial
            int gi = doc_.algebra->generator_index(t[i]);
            if (gi < 0)
                fail(line, "unknown generator '" + t[i] + "'");
            exps[static_cast<size_t>(gi)] += 1;
        }
        Monomial m(exps);
        if (!doc_.algebra->in_basis(m))
            fail(line, "monomial outside the algebra basis");
        return m;
    }

    void parse_differential(const Statement& st)
    {
        ensure_algebra(st);
        const auto& t = st.tokens;
        if (t.size() < 4 || t[2] != "=")
            fail(st.line, "expected 'd <generator> = <expr>'");
        int gi = doc_.algebra->generator_index(t[1]);
        if (gi < 0)
            fail(st.line, "unknown generator '" + t[1] + "'");
        Element img = parse_element(t, 3, t.size(), st.line);
        if (img.is_zero())
            return;
        auto deg = img.degree();
        if (!deg || *deg != doc_.algebra->generator_degree(static_cast<size_t>(gi)) + 1)
            fail(st.line, "degree mismatch: d(" + t[1] + ") must be homogeneous of degree " +
                              std::to_string(doc_.algebra->generator_degree(static_cast<size_t>(gi)) + 1));
        for (const auto& [name, e] : doc_.d_images)
            if (name == t[1])
                fail(st.line, "duplicate differential image for '" + t[1] + "'");
        doc_.d_images.push_back({t[1], std::move(img)});
    }

    void parse_operator(const Statement& st)
    {
        ensure_algebra(st);
        const auto& t = st.tokens;
        if (t.size() < 6 || t[2] != "degree" || !is_integer(t[3]) || t[4] != "{")
            fail(st.line, "expected 'operator <name> degree <k> { <monomial> -> <expr> ; ... }'");
        OperatorDecl decl;
        decl.name = t[1];
        decl.degree = std::stoi(t[3]);
        if (doc_.find_operator(decl.name) || doc_.find_multivector(decl.name))
            fail(st.line, "duplicate name '" + decl.name + "'");

        size_t i = 5;
        while (i < t.size() && t[i] != "}") {
            size_t arrow = i;
            while (arrow < t.size() && t[arrow] != "->")
                ++arrow;
            if (arrow >= t.size())
                fail(st.line, "operator entry is missing '->'");
            size_t end = arrow + 1;
            while (end < t.size() && t[end] != ";" && t[end] != "}")
                ++end;
            Monomial m = parse_monomial(t, i, arrow, st.line);
            Element img = parse_element(t, arrow + 1, end, st.line);
            if (!img.is_zero()) {
                auto deg = img.degree();
                if (!deg || *deg != doc_.algebra->degree_of(m) + decl.degree)
                    fail(st.line, "degree mismatch: image of '" + doc_.algebra->monomial_str(m) +
                                      "' must be homogeneous of degree " +
                                      std::to_string(doc_.algebra->degree_of(m) + decl.degree));
                for (const auto& [mm, ee] : decl.images)
                    if (mm == m)
                        fail(st.line, "duplicate image for monomial '" +
                                          doc_.algebra->monomial_str(m) + "'");
                decl.images.push_back({std::move(m), std::move(img)});
            }
            i = end;
            if (i < t.size() && t[i] == ";")
                ++i;
        }
        if (i >= t.size())
            fail(st.line, "operator block is missing its closing '}'");
        doc_.operators.push_back(std::move(decl));
    }

    void parse_multivector(const Statement& st)
    {
        ensure_algebra(st);
        const auto& t = st.tokens;
        if (t.size() < 6 || t[2] != "arity" || !is_integer(t[3]) || t[4] != "=")
            fail(st.line, "expected 'multivector <name> arity <k> = <expr>'");
        MultiVectorDecl decl;
        decl.name = t[1];
        if (doc_.find_operator(decl.name) || doc_.find_multivector(decl.name))
            fail(st.line, "duplicate name '" + decl.name + "'");
        int arity = std::stoi(t[3]);
        decl.mv = MultiVector(doc_.algebra, arity);

        size_t i = 5;
        bool first = true;
        while (i < t.size()) {
            Scalar sign = Scalar::one(doc_.field);
            if (t[i] == "+" || t[i] == "-") {
                if (t[i] == "-")
                    sign = -sign;
                ++i;
            } else if (!first)
                fail(st.line, "expected '+' or '-' before '" + t[i] + "'");
            first = false;
            Scalar coef = Scalar::one(doc_.field);
            if (i < t.size() && is_coefficient(t[i]))
                coef = parse_coefficient(t, i, st.line);
            std::vector<int> idx;
            while (i < t.size() && t[i] != "+" && t[i] != "-") {
                int gi = doc_.algebra->generator_index(t[i]);
                if (gi < 0)
                    fail(st.line, "unknown generator '" + t[i] + "'");
                idx.push_back(gi);
                ++i;
            }
            if (static_cast<int>(idx.size()) != arity)
                fail(st.line, "multivector term has " + std::to_string(idx.size()) +
                                  " factors, arity is " + std::to_string(arity));
            try {
                decl.mv.add_term(idx, sign * coef);
            } catch (const input_error& e) {
                fail(st.line, e.what());
            }
        }
        doc_.multivectors.push_back(std::move(decl));
    }

    void parse_structure(const Statement& st)
    {
        ensure_algebra(st);
        const auto& t = st.tokens;
        if (doc_.structure.kind != StructureDecl::Kind::None)
            fail(st.line, "duplicate structure statement");
        if (t.size() < 3)
            fail(st.line, "expected 'structure <kind> <binding...>'");

        StructureDecl s;
        if (t[1] == "bv")
            s.kind = StructureDecl::Kind::Bv;
        else if (t[1] == "bv_infinity")
            s.kind = StructureDecl::Kind::BvInfinity;
        else if (t[1] == "dg_lie")
            s.kind = StructureDecl::Kind::DgLie;
        else
            fail(st.line, "unknown structure kind '" + t[1] + "'");

        const std::string& mode = t[2];
        size_t i = 3;
        auto take_names = [&](size_t at_least) {
            while (i < t.size() && t[i] != "column")
                s.names.push_back(t[i++]);
            if (s.names.size() < at_least)
                fail(st.line, "structure binding needs " + std::to_string(at_least) + " name(s)");
        };
        if (mode == "delta") {
            s.mode = StructureDecl::Mode::Delta;
            take_names(1);
            if (s.names.size() != 1)
                fail(st.line, "'delta' takes exactly one operator name");
        } else if (mode == "koszul") {
            s.mode = StructureDecl::Mode::Koszul;
            take_names(1);
            if (s.names.size() != 1)
                fail(st.line, "'koszul' takes exactly one multivector name");
        } else if (mode == "lambda") {
            s.mode = StructureDecl::Mode::Lambda;
            take_names(1);
            if (s.names.size() != 1)
                fail(st.line, "'lambda' takes exactly one operator name");
        } else if (mode == "deltas") {
            s.mode = StructureDecl::Mode::Deltas;
            take_names(1);
        } else if (mode == "jacobi") {
            s.mode = StructureDecl::Mode::Jacobi;
            take_names(2);
            if (s.names.size() != 2)
                fail(st.line, "'jacobi' takes a bivector and a vector name");
        } else if (mode == "poisson") {
            s.mode = StructureDecl::Mode::Poisson;
            take_names(1);
        } else
            fail(st.line, "unknown structure binding '" + mode + "'");

        if (i < t.size()) {
            if (t[i] != "column" || i + 1 >= t.size() || !is_integer(t[i + 1]))
                fail(st.line, "expected 'column <p>'");
            if (s.kind != StructureDecl::Kind::DgLie)
                fail(st.line, "'column' applies to dg_lie structures only");
            s.column = std::stoi(t[i + 1]);
            if (*s.column != 1)
                fail(st.line, "only the column p = 1 restriction is supported");
            i += 2;
            if (i < t.size())
                fail(st.line, "trailing tokens after the structure statement");
        }

        // Bindings must resolve.
        auto need_op = [&](const std::string& n) {
            if (!doc_.find_operator(n))
                fail(st.line, "unknown operator '" + n + "'");
        };
        auto need_mv = [&](const std::string& n) {
            if (!doc_.find_multivector(n))
                fail(st.line, "unknown multivector '" + n + "'");
        };
        switch (s.mode) {
        case StructureDecl::Mode::Delta:
        case StructureDecl::Mode::Lambda: need_op(s.names[0]); break;
        case StructureDecl::Mode::Deltas:
            for (const auto& n : s.names)
                need_op(n);
            break;
        case StructureDecl::Mode::Koszul: need_mv(s.names[0]); break;
        case StructureDecl::Mode::Jacobi:
            need_mv(s.names[0]);
            need_mv(s.names[1]);
            break;
        case StructureDecl::Mode::Poisson:
            for (const auto& n : s.names)
                need_mv(n);
            break;
        default: break;
        }
        doc_.structure = std::move(s);
    }

    void canonicalize()
    {
        // Differential images in generator order; operator images in
        // (degree, basis position) order.
        std::sort(doc_.d_images.begin(), doc_.d_images.end(),
                  [&](const auto& a, const auto& b) {
                      return doc_.algebra->generator_index(a.first) <
                             doc_.algebra->generator_index(b.first);
                  });
        for (auto& op : doc_.operators)
            std::sort(op.images.begin(), op.images.end(), [&](const auto& a, const auto& b) {
                int da = doc_.algebra->degree_of(a.first), db = doc_.algebra->degree_of(b.first);
                if (da != db)
                    return da < db;
                return doc_.algebra->basis_index(a.first) < doc_.algebra->basis_index(b.first);
            });
    }

    std::vector<Statement> statements_;
    InputDocument doc_;
};

} // namespace

InputDocument parse_document(const std::string& text)
{
    return Parser(text).run();
}

GradedOperator InputDocument::differential() const
{
    std::vector<Element> images(algebra->num_generators(), Element::zero(algebra));
    for (const auto& [name, img] : d_images)
        images[static_cast<size_t>(algebra->generator_index(name))] = img;
    return derivation_from_images(algebra, images, 1);
}

const OperatorDecl* InputDocument::find_operator(const std::string& name) const
{
    for (const auto& op : operators)
        if (op.name == name)
            return &op;
    return nullptr;
}

const MultiVectorDecl* InputDocument::find_multivector(const std::string& name) const
{
    for (const auto& mv : multivectors)
        if (mv.name == name)
            return &mv;
    return nullptr;
}

GradedOperator InputDocument::build_operator(const OperatorDecl& decl) const
{
    return GradedOperator::from_monomial_images(algebra, decl.degree, decl.images);
}

std::string print_document(const InputDocument& doc)
{
    std::ostringstream os;
    os << "field " << doc.field.str() << "\n";
    for (const auto& g : doc.gens) {
        os << "generator " << g.name << " degree " << g.degree;
        if (g.bidegree)
            os << " bidegree " << g.bidegree->first << " " << g.bidegree->second;
        if (g.nilpotent)
            os << " nilpotent " << *g.nilpotent;
        os << "\n";
    }
    os << "cap " << doc.cap << "\n";
    for (const auto& [name, img] : doc.d_images)
        os << "d " << name << " = " << img.str() << "\n";
    for (const auto& op : doc.operators) {
        os << "operator " << op.name << " degree " << op.degree << " {\n";
        for (const auto& [m, img] : op.images)
            os << "  " << doc.algebra->monomial_str(m) << " -> " << img.str() << " ;\n";
        os << "}\n";
    }
    for (const auto& mv : doc.multivectors)
        os << "multivector " << mv.name << " arity " << mv.mv.arity() << " = " << mv.mv.str()
           << "\n";

    const auto& s = doc.structure;
    if (s.kind != StructureDecl::Kind::None) {
        os << "structure ";
        os << (s.kind == StructureDecl::Kind::Bv           ? "bv"
               : s.kind == StructureDecl::Kind::BvInfinity ? "bv_infinity"
                                                           : "dg_lie");
        switch (s.mode) {
        case StructureDecl::Mode::Delta: os << " delta"; break;
        case StructureDecl::Mode::Koszul: os << " koszul"; break;
        case StructureDecl::Mode::Lambda: os << " lambda"; break;
        case StructureDecl::Mode::Deltas: os << " deltas"; break;
        case StructureDecl::Mode::Jacobi: os << " jacobi"; break;
        case StructureDecl::Mode::Poisson: os << " poisson"; break;
        default: break;
        }
        for (const auto& n : s.names)
            os << " " << n;
        if (s.column)
            os << " column " << *s.column;
        os << "\n";
    }
    return os.str();
}

bool documents_equal(const InputDocument& a, const InputDocument& b)
{
    return print_document(a) == print_document(b);
}

InputDocument reduce_document_mod(const InputDocument& doc, std::uint32_t p)
{
    BTT_REQUIRE(doc.field.is_rationals(), "only rational documents reduce mod p");
    std::string text = print_document(doc);
    auto pos = text.find("field Q");
    BTT_ASSERT(pos != std::string::npos, "printed document is missing its field line");
    text = text.substr(0, pos) + "field F " + std::to_string(p) + text.substr(pos + 7);
    return parse_document(text); // re-parse reduces every integer literal mod p
}

BVStructure make_bv_structure(const InputDocument& doc)
{
    const auto& s = doc.structure;
    BTT_REQUIRE(s.kind != StructureDecl::Kind::None, "input document declares no structure");
    GradedOperator d = doc.differential();

    switch (s.mode) {
    case StructureDecl::Mode::Delta: {
        GradedOperator delta = doc.build_operator(*doc.find_operator(s.names[0]));
        std::vector<GradedOperator> deltas;
        if (!delta.is_zero())
            deltas.push_back(std::move(delta));
        else
            BTT_REQUIRE(delta.degree() == -1, "Δ must have degree -1");
        return BVStructure::make(doc.algebra, std::move(d), std::move(deltas));
    }
    case StructureDecl::Mode::Koszul: {
        const MultiVector& pi = doc.find_multivector(s.names[0])->mv;
        BTT_REQUIRE(pi.arity() == 2, "koszul binding needs a bivector");
        GradedOperator delta = graded_commutator(interior_product(pi), d);
        std::vector<GradedOperator> deltas;
        if (!delta.is_zero())
            deltas.push_back(std::move(delta));
        return BVStructure::make(doc.algebra, std::move(d), std::move(deltas));
    }
    case StructureDecl::Mode::Lambda:
        return build_hierarchy(doc.algebra, d, doc.build_operator(*doc.find_operator(s.names[0])));
    case StructureDecl::Mode::Deltas: {
        std::vector<GradedOperator> deltas;
        for (const auto& n : s.names)
            deltas.push_back(doc.build_operator(*doc.find_operator(n)));
        return BVStructure::make(doc.algebra, std::move(d), std::move(deltas));
    }
    case StructureDecl::Mode::Jacobi:
        return jacobi_structure(doc.algebra, d, doc.find_multivector(s.names[0])->mv,
                                doc.find_multivector(s.names[1])->mv);
    case StructureDecl::Mode::Poisson: {
        std::vector<MultiVector> pis;
        for (const auto& n : s.names)
            pis.push_back(doc.find_multivector(n)->mv);
        return generalized_poisson(doc.algebra, d, pis);
    }
    default:
        throw input_error("structure statement carries no usable binding");
    }
}

DgLie make_dg_lie(const InputDocument& doc)
{
    BTT_REQUIRE(doc.structure.kind == StructureDecl::Kind::DgLie ||
                    doc.structure.kind == StructureDecl::Kind::Bv,
                "dg-Lie extraction needs a bv or dg_lie structure");
    BVStructure b = make_bv_structure(doc);
    bool restrict_col = doc.structure.column.has_value();
    return to_dg_lie(b, restrict_col, true);
}

} // namespace btt

#include "skilltune/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace skilltune::pddl {

namespace {

struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    int line = 0;
    int column = 0;
};

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    SExpr read_document()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw PddlError("empty input", line_, column_);
        }
        SExpr e = read();
        skip_space();
        if (pos_ < text_.size()) {
            throw PddlError("unexpected content after the top-level expression", line_, column_);
        }
        return e;
    }

private:
    void advance()
    {
        if (text_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space()
    {
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (c == ';') {
                while (pos_ < text_.size() && text_[pos_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    SExpr read()
    {
        skip_space();
        if (pos_ >= text_.size()) {
            throw PddlError("unexpected end of input", line_, column_);
        }
        SExpr e;
        e.line = line_;
        e.column = column_;
        if (text_[pos_] == '(') {
            advance();
            e.is_list = true;
            for (;;) {
                skip_space();
                if (pos_ >= text_.size()) {
                    throw PddlError("unbalanced parenthesis", e.line, e.column);
                }
                if (text_[pos_] == ')') {
                    advance();
                    return e;
                }
                e.items.push_back(read());
            }
        }
        if (text_[pos_] == ')') {
            throw PddlError("unexpected ')'", line_, column_);
        }
        while (pos_ < text_.size()) {
            const char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';') break;
            e.atom.push_back(c);
            advance();
        }
        return e;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

[[noreturn]] void fail(const std::string& msg, const SExpr& at)
{
    throw PddlError(msg, at.line, at.column);
}

const SExpr& expect_list(const SExpr& e, const char* what)
{
    if (!e.is_list) fail(std::string("expected ") + what, e);
    return e;
}

const std::string& expect_atom(const SExpr& e, const char* what)
{
    if (e.is_list || e.atom.empty()) fail(std::string("expected ") + what, e);
    return e.atom;
}

bool is_keyword(const SExpr& e, std::string_view kw)
{
    return !e.is_list && lower(e.atom) == kw;
}

/// Parses "a b - t c d - u e" style lists.
std::vector<TypedName> parse_typed_list(const SExpr& list, std::size_t start)
{
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    const auto& items = list.items;
    for (std::size_t i = start; i < items.size(); ++i) {
        const auto& name = expect_atom(items[i], "a name");
        if (name == "-") {
            if (pending.empty() || i + 1 >= items.size()) fail("dangling type marker '-'", items[i]);
            const auto& type = expect_atom(items[i + 1], "a type name");
            for (auto& p : pending) out.push_back({p, type});
            pending.clear();
            ++i;
        } else {
            pending.push_back(name);
        }
    }
    for (auto& p : pending) out.push_back({p, "object"});
    return out;
}

Atom parse_atom(const SExpr& e)
{
    expect_list(e, "an atom");
    if (e.items.empty()) fail("empty atom", e);
    Atom a;
    a.predicate = expect_atom(e.items[0], "a predicate name");
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        a.args.push_back(expect_atom(e.items[i], "a term"));
    }
    return a;
}

/// Flattens (and ...) / single literal into positive and negative atoms.
void parse_literals(const SExpr& e, std::vector<Atom>& pos, std::vector<Atom>* neg, const char* what)
{
    expect_list(e, what);
    if (!e.items.empty() && is_keyword(e.items[0], "and")) {
        for (std::size_t i = 1; i < e.items.size(); ++i) {
            parse_literals(e.items[i], pos, neg, what);
        }
        return;
    }
    if (!e.items.empty() && is_keyword(e.items[0], "not")) {
        if (!neg) fail(std::string("negative literals are not supported in ") + what, e);
        if (e.items.size() != 2) fail("malformed (not ...)", e);
        neg->push_back(parse_atom(e.items[1]));
        return;
    }
    if (!e.items.empty() && !e.items[0].is_list) {
        const auto kw = lower(e.items[0].atom);
        if (kw == "or" || kw == "imply" || kw == "forall" || kw == "exists" || kw == "when") {
            fail("'" + kw + "' is outside the supported STRIPS subset", e);
        }
    }
    pos.push_back(parse_atom(e));
}

void check_header(const SExpr& doc, const char* kind, std::string& name)
{
    expect_list(doc, "(define ...)");
    if (doc.items.size() < 2 || !is_keyword(doc.items[0], "define")) fail("expected (define ...)", doc);
    const auto& head = expect_list(doc.items[1], "a header list");
    if (head.items.size() != 2 || !is_keyword(head.items[0], kind)) {
        fail(std::string("expected (") + kind + " <name>)", head);
    }
    name = expect_atom(head.items[1], "a name");
}

} // namespace

Domain parse_domain(std::string_view text)
{
    const SExpr doc = Reader(text).read_document();
    Domain d;
    check_header(doc, "domain", d.name);
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const auto& section = expect_list(doc.items[i], "a domain section");
        if (section.items.empty()) fail("empty section", section);
        const auto kw = lower(expect_atom(section.items[0], "a section keyword"));
        if (kw == ":requirements") {
            for (std::size_t k = 1; k < section.items.size(); ++k) {
                const auto req = lower(expect_atom(section.items[k], "a requirement flag"));
                if (req != ":strips" && req != ":typing") {
                    fail("unsupported requirement '" + req + "'", section.items[k]);
                }
                d.requirements.push_back(req);
            }
        } else if (kw == ":types") {
            d.types = parse_typed_list(section, 1);
        } else if (kw == ":predicates") {
            for (std::size_t k = 1; k < section.items.size(); ++k) {
                const auto& p = expect_list(section.items[k], "a predicate declaration");
                if (p.items.empty()) fail("empty predicate declaration", p);
                PredicateDecl decl;
                decl.name = expect_atom(p.items[0], "a predicate name");
                decl.params = parse_typed_list(p, 1);
                if (d.find_predicate(decl.name)) fail("predicate '" + decl.name + "' declared twice", p);
                d.predicates.push_back(std::move(decl));
            }
        } else if (kw == ":action") {
            ActionSchema a;
            if (section.items.size() < 2) fail("action without a name", section);
            a.name = expect_atom(section.items[1], "an action name");
            for (std::size_t k = 2; k < section.items.size(); k += 2) {
                const auto key = lower(expect_atom(section.items[k], "an action keyword"));
                if (k + 1 >= section.items.size()) fail("missing value for " + key, section.items[k]);
                const auto& value = section.items[k + 1];
                if (key == ":parameters") {
                    a.params = parse_typed_list(expect_list(value, "a parameter list"), 0);
                } else if (key == ":precondition") {
                    parse_literals(value, a.precondition, nullptr, "preconditions");
                } else if (key == ":effect") {
                    parse_literals(value, a.add_effects, &a.del_effects, "effects");
                } else {
                    fail("unsupported action keyword '" + key + "'", section.items[k]);
                }
            }
            if (d.find_action(a.name)) fail("action '" + a.name + "' declared twice", section);
            d.actions.push_back(std::move(a));
        } else {
            fail("unsupported domain section '" + kw + "'", section);
        }
    }
    validate_domain(d);
    return d;
}

Problem parse_problem(std::string_view text)
{
    const SExpr doc = Reader(text).read_document();
    Problem p;
    check_header(doc, "problem", p.name);
    for (std::size_t i = 2; i < doc.items.size(); ++i) {
        const auto& section = expect_list(doc.items[i], "a problem section");
        if (section.items.empty()) fail("empty section", section);
        const auto kw = lower(expect_atom(section.items[0], "a section keyword"));
        if (kw == ":domain") {
            if (section.items.size() != 2) fail("expected (:domain <name>)", section);
            p.domain = expect_atom(section.items[1], "a domain name");
        } else if (kw == ":objects") {
            p.objects = parse_typed_list(section, 1);
        } else if (kw == ":init") {
            for (std::size_t k = 1; k < section.items.size(); ++k) {
                p.init.push_back(parse_atom(section.items[k]));
            }
        } else if (kw == ":goal") {
            if (section.items.size() != 2) fail("expected (:goal <formula>)", section);
            parse_literals(section.items[1], p.goal, nullptr, "goals");
        } else if (kw == ":requirements") {
            continue;
        } else {
            fail("unsupported problem section '" + kw + "'", section);
        }
    }
    return p;
}

} // namespace skilltune::pddl

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 scimap Contributors

#pragma once

#include <cctype>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "scimap/mesh.hpp"
#include "scimap/record.hpp"

namespace scimap::query {

struct Date {
    int year = 0, month = 0, day = 0;

    friend auto operator<=>(const Date&, const Date&) = default;
};

struct TermClause {
    std::string descriptor;
    bool explode = true;
    bool major_only = false;
};

struct DateRange {
    Date from, to;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct And {
    std::vector<NodePtr> children;
};
struct Or {
    std::vector<NodePtr> children;
};

struct Node {
    std::variant<TermClause, DateRange, And, Or> value;
};

using QueryExpr = NodePtr;

struct SyntaxError : std::runtime_error {
    std::size_t position;
    SyntaxError(std::size_t pos, const std::string& what)
        : std::runtime_error("position " + std::to_string(pos) + ": " + what), position(pos) {}
};

namespace detail {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    QueryExpr parse() {
        QueryExpr e = parse_or();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "unexpected trailing input");
        return e;
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\n' || text_[pos_] == '\r'))
            ++pos_;
    }

    bool eat_keyword(std::string_view kw) {
        skip_ws();
        if (text_.substr(pos_, kw.size()) != kw) return false;
        const std::size_t after = pos_ + kw.size();
        if (after < text_.size() && std::isalnum(static_cast<unsigned char>(text_[after])))
            return false;
        pos_ = after;
        return true;
    }

    QueryExpr parse_or() {
        std::vector<NodePtr> parts{parse_and()};
        while (eat_keyword("OR")) parts.push_back(parse_and());
        if (parts.size() == 1) return parts.front();
        return std::make_shared<Node>(Node{Or{std::move(parts)}});
    }

    QueryExpr parse_and() {
        std::vector<NodePtr> parts{parse_primary()};
        while (eat_keyword("AND")) parts.push_back(parse_primary());
        if (parts.size() == 1) return parts.front();
        return std::make_shared<Node>(Node{And{std::move(parts)}});
    }

    QueryExpr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "expected clause");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            QueryExpr inner = parse_or();
            skip_ws();
            if (pos_ >= text_.size() || text_[pos_] != ')')
                throw SyntaxError(pos_, "unbalanced parenthesis");
            ++pos_;
            return inner;
        }
        if (c == '"') return parse_term();
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_date_range();
        throw SyntaxError(pos_, "expected quoted term, date range, or '('");
    }

    QueryExpr parse_term() {
        ++pos_;  // opening quote
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] != '"') ++pos_;
        if (pos_ >= text_.size()) throw SyntaxError(start - 1, "unbalanced quote");
        std::string name(text_.substr(start, pos_ - start));
        ++pos_;  // closing quote
        if (pos_ >= text_.size() || text_[pos_] != '[')
            throw SyntaxError(pos_, "expected '[' tag after quoted term");
        ++pos_;
        const std::size_t tag_start = pos_;
        while (pos_ < text_.size() && text_[pos_] != ']') ++pos_;
        if (pos_ >= text_.size()) throw SyntaxError(tag_start, "unterminated tag");
        const std::string_view tag = text_.substr(tag_start, pos_ - tag_start);
        ++pos_;
        TermClause tc;
        tc.descriptor = std::move(name);
        if (tag == "MH" || tag == "Mesh") {
            tc.explode = true;
        } else if (tag == "Mesh:NoExp") {
            tc.explode = false;
        } else if (tag == "MAJR") {
            tc.explode = true;
            tc.major_only = true;
        } else {
            throw SyntaxError(tag_start, "unknown tag '" + std::string(tag) + "'");
        }
        return std::make_shared<Node>(Node{tc});
    }

    int read_int(std::size_t count) {
        if (pos_ + count > text_.size()) throw SyntaxError(pos_, "malformed date");
        int v = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const char c = text_[pos_ + i];
            if (!std::isdigit(static_cast<unsigned char>(c)))
                throw SyntaxError(pos_ + i, "malformed date");
            v = v * 10 + (c - '0');
        }
        pos_ += count;
        return v;
    }

    Date parse_date() {
        Date d;
        const std::size_t at = pos_;
        d.year = read_int(4);
        expect('/');
        d.month = read_int(2);
        expect('/');
        d.day = read_int(2);
        if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31)
            throw SyntaxError(at, "date out of range");
        return d;
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c)
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
        ++pos_;
    }

    QueryExpr parse_date_range() {
        const std::size_t at = pos_;
        DateRange r;
        r.from = parse_date();
        expect(':');
        r.to = parse_date();
        if (text_.substr(pos_, 4) != "[dp]") throw SyntaxError(pos_, "expected [dp] after date range");
        pos_ += 4;
        if (r.to < r.from) throw SyntaxError(at, "date range start after end");
        return std::make_shared<Node>(Node{r});
    }
};

inline std::string pad2(int v) {
    std::string s = std::to_string(v);
    return s.size() < 2 ? "0" + s : s;
}

}  // namespace detail

inline QueryExpr parse_query(std::string_view text) { return detail::Parser(text).parse(); }

inline std::string print_query(const QueryExpr& e) {
    struct Printer {
        std::string operator()(const TermClause& t) const {
            std::string tag = t.major_only ? "MAJR" : (t.explode ? "MH" : "Mesh:NoExp");
            return "\"" + t.descriptor + "\"[" + tag + "]";
        }
        std::string operator()(const DateRange& r) const {
            auto fmt = [](const Date& d) {
                return std::to_string(d.year) + "/" + detail::pad2(d.month) + "/" + detail::pad2(d.day);
            };
            return fmt(r.from) + ":" + fmt(r.to) + "[dp]";
        }
        std::string operator()(const And& a) const {
            std::string out;
            for (std::size_t i = 0; i < a.children.size(); ++i) {
                if (i) out += " AND ";
                out += wrap(a.children[i], /*parent_and=*/true);
            }
            return out;
        }
        std::string operator()(const Or& o) const {
            std::string out;
            for (std::size_t i = 0; i < o.children.size(); ++i) {
                if (i) out += " OR ";
                out += wrap(o.children[i], /*parent_and=*/false);
            }
            return out;
        }
        std::string wrap(const NodePtr& n, bool parent_and) const {
            const bool needs_parens = parent_and && std::holds_alternative<Or>(n->value);
            std::string inner = std::visit(*this, n->value);
            return needs_parens ? "(" + inner + ")" : inner;
        }
    };
    return std::visit(Printer{}, e->value);
}

/// Checks every term clause against the thesaurus; throws naming the first
/// unknown descriptor.
inline void validate_query(const QueryExpr& e, const mesh::MeshThesaurus& th) {
    struct Visitor {
        const mesh::MeshThesaurus& th;
        void operator()(const TermClause& t) const {
            if (!th.contains(t.descriptor))
                throw mesh::ThesaurusError("unknown descriptor in query: " + t.descriptor);
        }
        void operator()(const DateRange&) const {}
        void operator()(const And& a) const {
            for (const auto& c : a.children) std::visit(*this, c->value);
        }
        void operator()(const Or& o) const {
            for (const auto& c : o.children) std::visit(*this, c->value);
        }
    };
    std::visit(Visitor{th}, e->value);
}

inline bool eval_term(const BibRecord& rec, const TermClause& t, const mesh::MeshThesaurus& th) {
    std::set<std::string> names =
        t.explode ? th.explode(t.descriptor) : std::set<std::string>{t.descriptor};
    for (const auto& m : rec.mesh_terms) {
        if (t.major_only && !m.major) continue;
        if (names.count(m.descriptor)) return true;
    }
    return false;
}

inline bool eval_query(const BibRecord& rec, const QueryExpr& e, const mesh::MeshThesaurus& th) {
    struct Eval {
        const BibRecord& rec;
        const mesh::MeshThesaurus& th;
        bool operator()(const TermClause& t) const { return eval_term(rec, t, th); }
        bool operator()(const DateRange& r) const {
            return r.from.year <= rec.year && rec.year <= r.to.year;
        }
        bool operator()(const And& a) const {
            for (const auto& c : a.children)
                if (!std::visit(*this, c->value)) return false;
            return true;
        }
        bool operator()(const Or& o) const {
            for (const auto& c : o.children)
                if (std::visit(*this, c->value)) return true;
            return false;
        }
    };
    return std::visit(Eval{rec, th}, e->value);
}

/// Order-preserving filter.
inline std::vector<BibRecord> run_query(const std::vector<BibRecord>& corpus, const QueryExpr& e,
                                        const mesh::MeshThesaurus& th) {
    validate_query(e, th);
    std::vector<BibRecord> out;
    for (const auto& rec : corpus)
        if (eval_query(rec, e, th)) out.push_back(rec);
    return out;
}

/// Per-clause boolean trace for one record (the CLI's --explain).
inline std::vector<std::string> explain_query(const BibRecord& rec, const QueryExpr& e,
                                              const mesh::MeshThesaurus& th) {
    std::vector<std::string> lines;
    struct Tracer {
        const BibRecord& rec;
        const mesh::MeshThesaurus& th;
        std::vector<std::string>& lines;
        int depth;
        bool visit(const NodePtr& n) const { return std::visit(Tracer{rec, th, lines, depth + 1}, n->value); }
        void emit(const std::string& label, bool v) const {
            lines.push_back(std::string(static_cast<std::size_t>(depth) * 2, ' ') + label + " -> " +
                            (v ? "true" : "false"));
        }
        bool operator()(const TermClause& t) const {
            const bool v = eval_term(rec, t, th);
            emit(print_query(std::make_shared<Node>(Node{t})), v);
            return v;
        }
        bool operator()(const DateRange& r) const {
            const bool v = r.from.year <= rec.year && rec.year <= r.to.year;
            emit(print_query(std::make_shared<Node>(Node{r})), v);
            return v;
        }
        bool operator()(const And& a) const {
            bool v = true;
            lines.push_back(std::string(static_cast<std::size_t>(depth) * 2, ' ') + "AND:");
            for (const auto& c : a.children) v = visit(c) && v;
            emit("AND", v);
            return v;
        }
        bool operator()(const Or& o) const {
            bool v = false;
            lines.push_back(std::string(static_cast<std::size_t>(depth) * 2, ' ') + "OR:");
            for (const auto& c : o.children) v = visit(c) || v;
            emit("OR", v);
            return v;
        }
    };
    std::visit(Tracer{rec, th, lines, 0}, e->value);
    return lines;
}

}  // namespace scimap::query

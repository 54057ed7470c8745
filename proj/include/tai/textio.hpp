#pragma once

// Text formats: the .tai theory grammar (parser + canonical serializer) and
// .csv ingestion of timed tabular datasets.
//
// Theory grammar:
//   theory  : formula ((NEWLINE | ';') formula)*
//   formula : set "=>" set
//   set     : '{' [atom (',' atom)*] '}'      -- "{}" is the empty set
//   atom    : IDENT '@' SIGNED_INT            -- IDENT: [A-Za-z_][A-Za-z0-9_]*
// Whitespace is insignificant; '#' starts a line comment. Duplicate atoms in
// a set are a warning (set semantics applied), not an error.

#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tai/core.hpp"

namespace tai {

struct SyntaxError : Error {
    int line;
    int col;
    SyntaxError(int line_, int col_, const std::string& what)
        : Error("syntax error at " + std::to_string(line_) + ":" +
                std::to_string(col_) + ": " + what),
          line(line_), col(col_) {}
};

struct DuplicateTimePoint : Error {
    explicit DuplicateTimePoint(Time t)
        : Error("duplicate time point " + std::to_string(t)) {}
};

struct UnknownCellValue : Error {
    UnknownCellValue(int line, const std::string& cell)
        : Error("line " + std::to_string(line) + ": unknown cell value \"" +
                cell + "\" (expected 1/x/X present, 0/empty absent)") {}
};

// Line/column extent of one parsed formula, for error reporting.
struct SourceSpan {
    int lineBegin = 0;
    int colBegin = 0;
    int lineEnd = 0;
    int colEnd = 0;
};

struct TheoryDocument {
    Theory formulas;
    std::vector<SourceSpan> sourceSpans;
    std::vector<std::string> warnings;  // duplicate-atom notices
};

namespace detail {

class Scanner {
  public:
    explicit Scanner(std::string_view text) : text_(text) {}

    bool atEnd() const { return pos_ >= text_.size(); }
    int line() const { return line_; }
    int col() const { return col_; }

    char peek() const { return atEnd() ? '\0' : text_[pos_]; }

    char advance() {
        char c = text_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    // Skips spaces/tabs/CR and '#' comments. Newlines are significant
    // (formula separators) unless skipNewlines is set.
    void skipTrivia(bool skipNewlines) {
        while (!atEnd()) {
            char c = peek();
            if (c == '#') {
                while (!atEnd() && peek() != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\r' ||
                       (skipNewlines && c == '\n')) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw SyntaxError(line_, col_, what);
    }

    void expect(char c, const char* what) {
        if (peek() != c) fail(std::string("expected ") + what);
        advance();
    }

    std::string ident() {
        if (!(std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_'))
            fail("expected identifier");
        std::string out;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
            out.push_back(advance());
        return out;
    }

    Time signedInt() {
        std::string out;
        if (peek() == '+' || peek() == '-') out.push_back(advance());
        if (!std::isdigit(static_cast<unsigned char>(peek())))
            fail("expected integer");
        while (std::isdigit(static_cast<unsigned char>(peek())))
            out.push_back(advance());
        try {
            return std::stoll(out);
        } catch (const std::out_of_range&) {
            fail("integer out of range");
        }
    }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

inline AttributeSet parseSet(Scanner& s, std::vector<std::string>* warnings) {
    s.skipTrivia(true);
    s.expect('{', "'{'");
    std::vector<TimedAttribute> atoms;
    s.skipTrivia(true);
    if (s.peek() != '}') {
        for (;;) {
            s.skipTrivia(true);
            std::string name = s.ident();
            s.expect('@', "'@'");
            Time t = s.signedInt();
            atoms.emplace_back(name, t);
            s.skipTrivia(true);
            if (s.peek() == ',') {
                s.advance();
                continue;
            }
            break;
        }
    }
    s.expect('}', "'}' or ','");
    AttributeSet out(atoms);
    if (warnings && out.size() != atoms.size()) {
        std::ostringstream w;
        w << "line " << s.line() << ": duplicate atom in set, set semantics applied";
        warnings->push_back(w.str());
    }
    return out;
}

inline Implication parseImplication(Scanner& s, std::vector<std::string>* warnings) {
    AttributeSet ant = parseSet(s, warnings);
    s.skipTrivia(true);
    if (s.peek() != '=') s.fail("expected '=>'");
    s.advance();
    s.expect('>', "'=>'");
    AttributeSet cons = parseSet(s, warnings);
    return {std::move(ant), std::move(cons)};
}

}  // namespace detail

inline TheoryDocument parseTheory(std::string_view text) {
    TheoryDocument doc;
    detail::Scanner s(text);
    for (;;) {
        s.skipTrivia(true);
        while (!s.atEnd() && s.peek() == ';') {
            s.advance();
            s.skipTrivia(true);
        }
        if (s.atEnd()) break;
        SourceSpan span;
        span.lineBegin = s.line();
        span.colBegin = s.col();
        doc.formulas.push_back(detail::parseImplication(s, &doc.warnings));
        span.lineEnd = s.line();
        span.colEnd = s.col();
        doc.sourceSpans.push_back(span);
        s.skipTrivia(false);
        if (s.atEnd()) break;
        if (s.peek() == '\n' || s.peek() == ';') {
            s.advance();
        } else {
            s.fail("expected end of formula (newline or ';')");
        }
    }
    return doc;
}

inline Implication parseImplication(std::string_view text) {
    detail::Scanner s(text);
    Implication f = detail::parseImplication(s, nullptr);
    s.skipTrivia(true);
    if (!s.atEnd()) s.fail("trailing input after formula");
    return f;
}

inline AttributeSet parseSet(std::string_view text) {
    detail::Scanner s(text);
    AttributeSet out = detail::parseSet(s, nullptr);
    s.skipTrivia(true);
    if (!s.atEnd()) s.fail("trailing input after set");
    return out;
}

inline std::string serializeSet(const AttributeSet& s) {
    std::string out = "{";
    bool first = true;
    for (const TimedAttribute& a : s) {
        if (!first) out += ", ";
        first = false;
        out += a.attr.name();
        out += '@';
        out += std::to_string(a.time);
    }
    out += '}';
    return out;
}

inline std::string serializeImplication(const Implication& f) {
    return serializeSet(f.antecedent) + " => " + serializeSet(f.consequent);
}

// Canonical form: atoms sorted (attr, time), one formula per line.
inline std::string serializeTheory(const Theory& t) {
    std::string out;
    for (const Implication& f : t) {
        out += serializeImplication(f);
        out += '\n';
    }
    return out;
}

// Tabular dataset: rows keyed by time point, each holding the set of
// attribute symbols marked present at that time.
struct DatasetTable {
    std::vector<std::string> attributeHeader;
    std::map<Time, std::set<std::string>> rows;
};

namespace detail {

inline std::vector<std::string> splitCsvLine(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    for (std::string& cell : cells) {
        std::size_t b = cell.find_first_not_of(" \t");
        std::size_t e = cell.find_last_not_of(" \t");
        cell = (b == std::string::npos) ? std::string() : cell.substr(b, e - b + 1);
    }
    return cells;
}

inline bool validIdent(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

}  // namespace detail

// First header cell names the time column; remaining cells are attribute
// symbols. Body cells: 1/x/X present, 0/empty absent. Time cells are signed
// integers, unique per file. Row order is irrelevant.
inline DatasetTable ingestCSV(std::string_view text) {
    DatasetTable table;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineNo = 0;
    bool sawHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        std::vector<std::string> cells = detail::splitCsvLine(line);
        if (cells.size() == 1 && cells[0].empty()) continue;  // blank line
        if (!sawHeader) {
            if (cells.size() < 1) throw SyntaxError(lineNo, 1, "empty header");
            for (std::size_t k = 1; k < cells.size(); ++k) {
                if (!detail::validIdent(cells[k]))
                    throw SyntaxError(lineNo, 1, "invalid attribute symbol \"" +
                                                     cells[k] + "\" in header");
                table.attributeHeader.push_back(cells[k]);
            }
            sawHeader = true;
            continue;
        }
        if (cells.size() > table.attributeHeader.size() + 1)
            throw SyntaxError(lineNo, 1, "row has more cells than the header");
        Time t;
        try {
            std::size_t used = 0;
            t = std::stoll(cells[0], &used);
            if (used != cells[0].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw SyntaxError(lineNo, 1, "time cell \"" + cells[0] +
                                             "\" is not a signed integer");
        }
        if (table.rows.count(t)) throw DuplicateTimePoint(t);
        std::set<std::string>& row = table.rows[t];
        for (std::size_t k = 1; k < cells.size(); ++k) {
            const std::string& cell = cells[k];
            if (cell == "1" || cell == "x" || cell == "X") {
                row.insert(table.attributeHeader[k - 1]);
            } else if (!(cell.empty() || cell == "0")) {
                throw UnknownCellValue(lineNo, cell);
            }
        }
    }
    if (!sawHeader) throw SyntaxError(1, 1, "missing header row");
    return table;
}

// { y@t | y present at t } -- the dataset as a finite model.
inline AttributeSet toTimedSet(const DatasetTable& table) {
    std::vector<TimedAttribute> atoms;
    for (const auto& [t, attrs] : table.rows)
        for (const std::string& a : attrs) atoms.emplace_back(a, t);
    return AttributeSet(atoms);
}

}  // namespace tai

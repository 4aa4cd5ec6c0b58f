#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qll/qasm.hpp"
#include "qasm_helpers.hpp"

namespace qll {

namespace qasm_detail {

std::optional<HelperGate> find_helper(std::string_view name)
{
    for (const HelperGate& h : kHelperGates) {
        if (h.name == name) {
            return h;
        }
    }
    return std::nullopt;
}

} // namespace qasm_detail

namespace {

using qasm_detail::HelperGate;

enum class TokenKind { Ident, Integer, Real, String, Symbol, Arrow, End };

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& source) : src_(source) {}

    std::vector<Token> tokenize()
    {
        std::vector<Token> tokens;
        while (true) {
            skip_space_and_comments();
            Token tok;
            tok.line = line_;
            tok.column = column_;
            if (pos_ >= src_.size()) {
                tok.kind = TokenKind::End;
                tokens.push_back(tok);
                return tokens;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                tok.kind = TokenKind::Ident;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                        src_[pos_] == '_')) {
                    tok.text.push_back(src_[pos_]);
                    advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                tok.kind = TokenKind::Integer;
                while (pos_ < src_.size() &&
                       std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    tok.text.push_back(src_[pos_]);
                    advance();
                }
                if (pos_ < src_.size() && src_[pos_] == '.') {
                    tok.kind = TokenKind::Real;
                    tok.text.push_back('.');
                    advance();
                    while (pos_ < src_.size() &&
                           std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                        tok.text.push_back(src_[pos_]);
                        advance();
                    }
                }
            } else if (c == '"') {
                tok.kind = TokenKind::String;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') {
                    tok.text.push_back(src_[pos_]);
                    advance();
                }
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw SyntaxError({tok.line, tok.column, "unterminated string"},
                                      "unterminated string literal");
                }
                advance();
            } else if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
                tok.kind = TokenKind::Arrow;
                tok.text = "->";
                advance();
                advance();
            } else {
                tok.kind = TokenKind::Symbol;
                tok.text = std::string(1, c);
                advance();
            }
            tokens.push_back(std::move(tok));
        }
    }

private:
    void advance()
    {
        if (src_[pos_] == '\n') {
            ++line_;
            column_ = 1;
        } else {
            ++column_;
        }
        ++pos_;
    }

    void skip_space_and_comments()
    {
        while (pos_ < src_.size()) {
            const char c = src_[pos_];
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
                while (pos_ < src_.size() && src_[pos_] != '\n') {
                    advance();
                }
            } else {
                return;
            }
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int column_ = 1;
};

struct RegisterInfo {
    std::string name;
    int size = 0;
};

class Parser {
public:
    explicit Parser(const std::string& source)
    {
        tokens_ = Lexer(source).tokenize();
    }

    QuantumCircuit parse()
    {
        while (!at_end()) {
            statement();
        }
        QuantumCircuit circuit(qreg_ ? qreg_->size : 0, creg_ ? creg_->size : 0);
        if (qreg_) {
            for (int i = 0; i < qreg_->size; ++i) {
                circuit.qubit_labels[i] = qreg_->name + "[" + std::to_string(i) + "]";
            }
        }
        for (Gate& g : pending_) {
            circuit.append(std::move(g));
        }
        return circuit;
    }

private:
    const Token& peek() const { return tokens_[index_]; }
    bool at_end() const { return peek().kind == TokenKind::End; }

    Token take()
    {
        Token t = tokens_[index_];
        if (t.kind != TokenKind::End) {
            ++index_;
        }
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& message) const
    {
        throw SyntaxError({at.line, at.column, message}, message);
    }

    Token expect_symbol(const std::string& sym)
    {
        Token t = take();
        if (t.kind != TokenKind::Symbol || t.text != sym) {
            fail(t, "expected '" + sym + "'");
        }
        return t;
    }

    Token expect_ident()
    {
        Token t = take();
        if (t.kind != TokenKind::Ident) {
            fail(t, "expected an identifier");
        }
        return t;
    }

    int expect_index()
    {
        Token t = take();
        if (t.kind != TokenKind::Integer) {
            fail(t, "expected an integer index");
        }
        try {
            return std::stoi(t.text);
        } catch (const std::exception&) {
            fail(t, "index out of range");
        }
    }

    void statement()
    {
        const Token head = take();
        if (head.kind == TokenKind::Symbol && head.text == ";") {
            return; // empty statement
        }
        if (head.kind != TokenKind::Ident) {
            fail(head, "expected a statement");
        }
        if (head.text == "OPENQASM") {
            Token version = take();
            if ((version.kind != TokenKind::Real && version.kind != TokenKind::Integer) ||
                version.text != "2.0") {
                fail(version, "only OPENQASM 2.0 is supported");
            }
            expect_symbol(";");
        } else if (head.text == "include") {
            Token file = take();
            if (file.kind != TokenKind::String) {
                fail(file, "expected an include path");
            }
            expect_symbol(";");
        } else if (head.text == "qreg" || head.text == "creg") {
            declare_register(head);
        } else if (head.text == "barrier") {
            while (!at_end() && !(peek().kind == TokenKind::Symbol && peek().text == ";")) {
                take();
            }
            expect_symbol(";");
        } else if (head.text == "gate") {
            declare_helper(head);
        } else if (head.text == "measure") {
            measurement();
        } else {
            application(head);
        }
    }

    void declare_register(const Token& head)
    {
        Token name = expect_ident();
        expect_symbol("[");
        Token size_tok = take();
        if (size_tok.kind != TokenKind::Integer) {
            fail(size_tok, "expected a register size");
        }
        int size = 0;
        try {
            size = std::stoi(size_tok.text);
        } catch (const std::exception&) {
            fail(size_tok, "register size out of range");
        }
        if (size <= 0) {
            fail(size_tok, "register size must be positive");
        }
        expect_symbol("]");
        expect_symbol(";");
        auto& slot = head.text == "qreg" ? qreg_ : creg_;
        if (slot) {
            fail(name, "only one " + head.text + " per file is supported");
        }
        slot = RegisterInfo{name.text, size};
    }

    // Helper declarations are only accepted verbatim as this toolkit's
    // serializer emits them; anything else is an unsupported definition.
    void declare_helper(const Token& head)
    {
        Token name = expect_ident();
        auto helper = qasm_detail::find_helper(name.text);
        if (!helper) {
            throw UnsupportedGateError(
                {name.line, name.column, "unsupported gate definition '" + name.text + "'"},
                name.text, "unsupported gate definition '" + name.text + "'");
        }
        const std::string canon = std::string(helper->params) + " { " +
                                  std::string(helper->body) + " }";
        const std::vector<Token> expected_tokens = Lexer(canon).tokenize();
        for (std::size_t i = 0; expected_tokens[i].kind != TokenKind::End; ++i) {
            Token actual = take();
            if (actual.kind == TokenKind::End || actual.text != expected_tokens[i].text) {
                fail(actual, "gate definition does not match the canonical '" +
                                 std::string(helper->name) + "' helper");
            }
        }
        declared_helpers_.push_back(helper->name);
        (void)head;
    }

    bool helper_declared(std::string_view name) const
    {
        for (const auto& n : declared_helpers_) {
            if (n == name) {
                return true;
            }
        }
        return false;
    }

    int quantum_argument()
    {
        Token name = expect_ident();
        if (!qreg_ || name.text != qreg_->name) {
            throw UndeclaredRegisterError(
                {name.line, name.column, "undeclared quantum register '" + name.text + "'"},
                "undeclared quantum register '" + name.text + "'");
        }
        expect_symbol("[");
        Token idx_tok = peek();
        int index = expect_index();
        if (index >= qreg_->size) {
            fail(idx_tok, "qubit index " + std::to_string(index) +
                              " exceeds register size " + std::to_string(qreg_->size));
        }
        expect_symbol("]");
        return index;
    }

    int classical_argument()
    {
        Token name = expect_ident();
        if (!creg_ || name.text != creg_->name) {
            throw UndeclaredRegisterError(
                {name.line, name.column, "undeclared classical register '" + name.text + "'"},
                "undeclared classical register '" + name.text + "'");
        }
        expect_symbol("[");
        Token idx_tok = peek();
        int index = expect_index();
        if (index >= creg_->size) {
            fail(idx_tok, "bit index " + std::to_string(index) +
                              " exceeds register size " + std::to_string(creg_->size));
        }
        expect_symbol("]");
        return index;
    }

    void measurement()
    {
        Token at = peek();
        int qubit = quantum_argument();
        Token arrow = take();
        if (arrow.kind != TokenKind::Arrow) {
            fail(arrow, "expected '->'");
        }
        int clbit = classical_argument();
        expect_symbol(";");
        append_gate(at, GateKind::Measure, {qubit}, {}, clbit);
    }

    void application(const Token& head)
    {
        static const std::map<std::string, GateKind> base_gates = {
            {"x", GateKind::X},     {"y", GateKind::Y},   {"z", GateKind::Z},
            {"h", GateKind::H},     {"s", GateKind::S},   {"t", GateKind::T},
            {"sdg", GateKind::Sdg}, {"tdg", GateKind::Tdg},
            {"cx", GateKind::CX},   {"ccx", GateKind::CCX},
        };

        if (peek().kind == TokenKind::Symbol && peek().text == "(") {
            throw UnsupportedGateError(
                {head.line, head.column,
                 "unsupported gate '" + head.text + "' (parameterized gates are not in the subset)"},
                head.text,
                "unsupported gate '" + head.text + "'");
        }

        auto base = base_gates.find(head.text);
        auto helper = qasm_detail::find_helper(head.text);
        int arity = 0;
        if (base != base_gates.end()) {
            arity = base_control_count(base->second) + 1;
        } else if (helper && helper_declared(head.text)) {
            arity = helper->num_params;
        } else {
            throw UnsupportedGateError(
                {head.line, head.column, "unsupported gate '" + head.text + "'"},
                head.text, "unsupported gate '" + head.text + "'");
        }

        std::vector<int> args;
        args.push_back(quantum_argument());
        for (int i = 1; i < arity; ++i) {
            expect_symbol(",");
            args.push_back(quantum_argument());
        }
        expect_symbol(";");

        if (base != base_gates.end()) {
            std::vector<int> controls(args.begin(), args.end() - 1);
            append_gate(head, base->second, {args.back()}, controls, std::nullopt);
        } else {
            // helper use: controls, optional scratch wire (semantically inert),
            // then the target
            for (std::size_t i = 0; i < args.size(); ++i) {
                for (std::size_t j = i + 1; j < args.size(); ++j) {
                    if (args[i] == args[j]) {
                        fail(head, "gate qubit indices must be distinct");
                    }
                }
            }
            std::vector<int> controls(args.begin(), args.begin() + helper->num_controls);
            append_gate(head, helper->kind, {args.back()}, controls, std::nullopt);
        }
    }

    void append_gate(const Token& at, GateKind kind, std::vector<int> targets,
                     std::vector<int> controls, std::optional<int> classical)
    {
        try {
            pending_.push_back(
                Gate(kind, std::move(targets), std::move(controls), classical));
        } catch (const Error& e) {
            fail(at, e.what());
        }
    }

    std::vector<Token> tokens_;
    std::size_t index_ = 0;
    std::optional<RegisterInfo> qreg_;
    std::optional<RegisterInfo> creg_;
    std::vector<std::string_view> declared_helpers_;
    std::vector<Gate> pending_;
};

} // namespace

std::string format_diagnostic(const std::string& file, const ParseDiagnostic& diag)
{
    std::ostringstream out;
    out << file << ":" << diag.line << ":" << diag.column << ": " << diag.severity
        << ": " << diag.message;
    return out.str();
}

QuantumCircuit parse_qasm(const std::string& source)
{
    return Parser(source).parse();
}

} // namespace qll

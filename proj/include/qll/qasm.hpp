#pragma once

#include <string>

#include "qll/circuit.hpp"
#include "qll/errors.hpp"

namespace qll {

/// Source position of a parse problem, 1-based.
struct ParseDiagnostic {
    int line = 1;
    int column = 1;
    std::string message;
    std::string severity = "error";
};

/// "file:line:col: severity: message"
std::string format_diagnostic(const std::string& file, const ParseDiagnostic& diag);

class ParseError : public Error {
public:
    ParseError(ParseDiagnostic diag, const std::string& what_arg)
        : Error(what_arg), diagnostic(std::move(diag))
    {
    }
    ParseDiagnostic diagnostic;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

class UnsupportedGateError : public ParseError {
public:
    UnsupportedGateError(ParseDiagnostic diag, std::string gate,
                         const std::string& what_arg)
        : ParseError(std::move(diag), what_arg), gate_name(std::move(gate))
    {
    }
    std::string gate_name;
};

class UndeclaredRegisterError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Parses the OpenQASM 2.0 subset used for reversible benchmarks: one qreg,
/// one creg, gate statements over {x,y,z,h,s,t,sdg,tdg,cx,ccx,measure},
/// `barrier` and `include` ignored, `//` comments. Also accepts the helper
/// gates this toolkit's serializer declares for multi-controlled gates.
QuantumCircuit parse_qasm(const std::string& source);

/// Serializes a circuit to the same subset. Gates whose control count
/// exceeds the named-gate arity are emitted through declared helper gates
/// whose bodies decompose into the supported set; a 3-control X borrows an
/// idle wire of the circuit as a scratch qubit. Throws
/// UnsupportedOperationError when a gate has no exact representation.
std::string serialize_qasm(const QuantumCircuit& circuit);

} // namespace qll

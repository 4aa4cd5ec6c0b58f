#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "qll/gate.hpp"

namespace qll::qasm_detail {

/// Helper gates the serializer may declare. Bodies are exact decompositions
/// over the supported gate set; mcx3 implements a 3-control X with a borrowed
/// scratch wire that is returned to its input value.
struct HelperGate {
    std::string_view name;
    int num_params;
    std::string_view params;
    std::string_view body;
    GateKind kind;    // IR kind of the reconstructed gate
    int num_controls; // leading parameters that act as controls
    bool has_scratch; // one parameter before the target is a borrowed wire
};

inline constexpr std::array<HelperGate, 6> kHelperGates = {{
    {"mcx3", 5, "c0,c1,c2,s,t",
     "ccx c0,c1,s; ccx s,c2,t; ccx c0,c1,s; ccx s,c2,t;", GateKind::CCX, 3, true},
    {"chx", 2, "a,b",
     "h b; sdg b; cx a,b; h b; t b; cx a,b; t b; h b; s b; x b; s a;",
     GateKind::H, 1, false},
    {"cyx", 2, "a,b", "sdg b; cx a,b; s b;", GateKind::Y, 1, false},
    {"czx", 2, "a,b", "h b; cx a,b; h b;", GateKind::Z, 1, false},
    {"csx", 2, "a,b", "t a; cx a,b; tdg b; cx a,b; t b;", GateKind::S, 1, false},
    {"csdgx", 2, "a,b", "tdg a; cx a,b; t b; cx a,b; tdg b;", GateKind::Sdg, 1,
     false},
}};

std::optional<HelperGate> find_helper(std::string_view name);

} // namespace qll::qasm_detail

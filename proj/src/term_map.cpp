#include "symbound/term_map.hpp"

#include <stdexcept>

namespace symbound {

std::string fn_name(FnSym f) {
    return f == FnSym::Floor ? "floor" : "inv";
}

void ForeignFunctionMap::add(VarId var, FnSym fn, Polynomial arg) {
    if (contains(var)) throw std::invalid_argument("ForeignFunctionMap: duplicate variable");
    entries_.push_back({var, fn, std::move(arg)});
}

bool ForeignFunctionMap::contains(VarId v) const { return find(v) != nullptr; }

const ForeignFunctionMap::Entry* ForeignFunctionMap::find(VarId v) const {
    for (auto& e : entries_)
        if (e.var == v) return &e;
    return nullptr;
}

ForeignFunctionMap::Entry* ForeignFunctionMap::find(VarId v) {
    for (auto& e : entries_)
        if (e.var == v) return &e;
    return nullptr;
}

std::string ForeignFunctionMap::str(const VarTable& vars) const {
    std::string s = "{";
    for (auto& e : entries_) {
        if (s.size() > 1) s += ", ";
        s += vars.name(e.var) + " -> " + fn_name(e.fn) + "(" + e.arg.str(vars) + ")";
    }
    return s + "}";
}

}  // namespace symbound

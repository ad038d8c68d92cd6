#include "symbound/variable.hpp"

#include <stdexcept>

namespace symbound {

VarId VarTable::declare(const std::string& name, VarOrigin origin) {
    if (index_.count(name)) throw std::invalid_argument("duplicate variable: " + name);
    VarId id = static_cast<VarId>(vars_.size());
    vars_.push_back({name, origin});
    index_.emplace(name, id);
    return id;
}

VarId VarTable::fresh(const std::string& base) {
    for (int k = 1;; ++k) {
        std::string name = base + std::to_string(k);
        if (!index_.count(name)) return declare(name, VarOrigin::Fresh);
    }
}

VarId VarTable::find(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? kNoVar : it->second;
}

}  // namespace symbound

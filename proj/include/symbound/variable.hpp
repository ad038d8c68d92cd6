#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace symbound {

using VarId = int;
constexpr VarId kNoVar = -1;

enum class VarOrigin { Input, Fresh };

/// Interns variable names for one problem instance. Ids are handed out in
/// declaration order; fresh purification variables always come after the
/// inputs and never collide with a declared name.
class VarTable {
public:
    struct Info {
        std::string name;
        VarOrigin origin;
    };

    VarId declare(const std::string& name, VarOrigin origin = VarOrigin::Input);
    /// Creates a fresh variable named base<k> for the first free k.
    VarId fresh(const std::string& base = "u");
    VarId find(const std::string& name) const;

    const std::string& name(VarId v) const { return vars_.at(v).name; }
    VarOrigin origin(VarId v) const { return vars_.at(v).origin; }
    int size() const { return static_cast<int>(vars_.size()); }

private:
    std::vector<Info> vars_;
    std::unordered_map<std::string, VarId> index_;
};

using VarTablePtr = std::shared_ptr<VarTable>;

}  // namespace symbound

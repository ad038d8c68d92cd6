#pragma once

#include <string>
#include <vector>

#include "symbound/lra.hpp"

namespace symbound::lra {

/// Renders a system as an SMT-LIB2 QF_LRA script. Variable i is named x<i>
/// unless names are supplied.
std::string to_smt2(const LinearSystem& sys, const std::vector<std::string>& names = {},
                    bool get_model = true);

/// Bridge to an external SMT-LIB2 solver executable (e.g. z3). The command is
/// invoked as `<cmd> <script-file>` and must answer sat/unsat on stdout,
/// followed by a (get-value ...) response when sat.
class ExternalBridge {
public:
    explicit ExternalBridge(std::string command) : command_(std::move(command)) {}
    const std::string& command() const { return command_; }

private:
    std::string command_;
};

CheckResult bridge_check(const ExternalBridge& bridge, const LinearSystem& sys);

}  // namespace symbound::lra

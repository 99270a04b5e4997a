#include "nabla/report.hpp"

#include <stdexcept>

namespace nabla {

const CheckResult& Report::at(const std::string& name) const
{
    for (const auto& c : checks_) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no check named '" + name + "'");
}

} // namespace nabla

#include "friedrichs/errors.hpp"

#include <array>
#include <charconv>

namespace friedrichs {

namespace {

std::string compose(std::string_view module, std::string_view condition, std::string_view value)
{
    std::string msg;
    msg.reserve(module.size() + condition.size() + value.size() + 32);
    msg.append("[").append(module).append("] ").append(condition);
    if (!value.empty()) {
        msg.append(" (offending value: ").append(value).append(")");
    }
    return msg;
}

} // namespace

Error::Error(std::string_view module, std::string_view condition, std::string_view value)
    : std::runtime_error(compose(module, condition, value)), module_(module), condition_(condition)
{
}

std::string format_value(double v)
{
    std::array<char, 32> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

} // namespace friedrichs

#pragma once

#include <stdexcept>
#include <string>

namespace dringct {

enum class Errc {
    amount_range,
    dlog_not_found,
    bad_index,
    bad_ring_size,
    bad_spend_key,
    unbalanced,
    bad_batch,
    unknown_offset,
    invalid_tx,
    double_spend,
    parse_error,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
    case Errc::amount_range:   return "AmountRange";
    case Errc::dlog_not_found: return "DlogNotFound";
    case Errc::bad_index:      return "BadIndex";
    case Errc::bad_ring_size:  return "BadRingSize";
    case Errc::bad_spend_key:  return "BadSpendKey";
    case Errc::unbalanced:     return "Unbalanced";
    case Errc::bad_batch:      return "BadBatch";
    case Errc::unknown_offset: return "UnknownOffset";
    case Errc::invalid_tx:     return "Invalid";
    case Errc::double_spend:   return "DoubleSpend";
    case Errc::parse_error:    return "ParseError";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    explicit Error(Errc code) : Error(code, errc_name(code)) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace dringct

#ifndef ARCRANK_FORMAT_HPP
#define ARCRANK_FORMAT_HPP

#include <string>

namespace arcrank {

/// Full-precision decimal form (%.17g); round-trips through parsing.
std::string format_g17(double value);

/// Fixed two decimals, display form.
std::string format_f2(double value);

/// Fixed one decimal, display form.
std::string format_f1(double value);

}  // namespace arcrank

#endif

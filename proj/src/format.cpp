#include "arcrank/format.hpp"

#include <cstdio>

namespace arcrank {

namespace {
std::string printf_double(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, value);
    return buf;
}
}  // namespace

std::string format_g17(double value) { return printf_double("%.17g", value); }

std::string format_f2(double value) { return printf_double("%.2f", value); }

std::string format_f1(double value) { return printf_double("%.1f", value); }

}  // namespace arcrank

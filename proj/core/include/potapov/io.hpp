#pragma once

#include <string>
#include <string_view>

#include "potapov/network.hpp"
#include "potapov/potapov.hpp"
#include "potapov/roots.hpp"
#include "potapov/separation.hpp"
#include "potapov/statespace.hpp"

namespace potapov {

/// JSON documents use nested [re, im] pairs for complex matrices, row-major.

/// {"n", "ports", "m1".."m4", "delays"}; the inverse of parse_network.
[[nodiscard]] std::string network_to_json(const DelayNetwork& net);

/// {"region": {...}, "poles": [[re, im], ...], "residuals": [...], "zeros": [...], "warnings": [...]}.
[[nodiscard]] std::string roots_to_json(const RootSet& poles);

/// {"ports", "u", "factors": [{"pole": [re, im], "v": [[re, im], ...]}]}.
[[nodiscard]] std::string product_to_json(const PotapovProduct& prod);
[[nodiscard]] PotapovProduct parse_product(std::string_view text);

/// {"modes", "ports", "a", "b", "c", "d"}.
[[nodiscard]] std::string statespace_to_json(const StateSpace& ss);
[[nodiscard]] StateSpace parse_statespace(std::string_view text);

/// {"core": <network>, "stages": [{"gain": [[...]], "delays": [...]}]}.
[[nodiscard]] std::string separation_to_json(const SeparationResult& sep);

/// printf-style %.12e.
[[nodiscard]] std::string format_double(double x);

/// Header "t,re_u_0,im_u_0,..." then one row per sample, every number as %.12e.
[[nodiscard]] std::string signal_to_csv(const Signal& s);

/// Reads a file into a string; throws MalformedInput if it cannot be opened.
[[nodiscard]] std::string read_text_file(const std::string& path);

}  // namespace potapov

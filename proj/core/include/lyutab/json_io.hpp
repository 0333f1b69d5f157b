#pragma once

#include <cstdint>
#include <string>

#include "lyubeznik.hpp"
#include "monomial.hpp"

namespace lyutab {

// On-disk ideal description: {"vars": int, "gens": [monomial string or
// exponent array, ...], "include_p": bool, "p": int}.  Generator strings
// look like "x1*x2*x3"; exponent arrays have length vars with 0/1 entries.
struct IdealInput {
    MonomialIdeal ideal;
    std::uint64_t p = 2;
    bool include_p = false;
};

IdealInput parse_ideal_json(const std::string& text);
IdealInput load_ideal_file(const std::string& path);
std::string ideal_to_json(const IdealInput& input);

std::string table_to_json(const LyubeznikTable& table);
LyubeznikTable table_from_json(const std::string& text);

// Human-readable rendering: rows are the Ext index i from 0 at the top down
// to d, columns are j, followed by the provenance block.
std::string render_table_text(const LyubeznikTable& table);

} // namespace lyutab

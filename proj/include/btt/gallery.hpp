#pragma once

#include "btt/format.hpp"

namespace btt {

// Built-in example inputs in the canonical text format, each with a manifest
// of properties the test suite replays in full.
struct GalleryEntry {
    std::string name;
    std::string description;
    std::string document;
    std::vector<std::pair<std::string, std::string>> manifest;
};

std::vector<std::string> gallery_names();

// `n` parametrizes the torus entries (number of odd generators resp. complex
// dimension); 0 picks the default.
GalleryEntry gallery_entry(const std::string& name, int n = 0);

// Bounded deterministic search for a BV structure on a small Chevalley-
// Eilenberg algebra whose Maurer-Cartan recursion hits an order-2
// obstruction. Ships as the oracle behind the obstructed_dglie entry.
struct ObstructedSearchResult {
    bool found = false;
    std::string document;
    int class_index = 0;
    int order = 0;
    int candidates_tried = 0;
};

ObstructedSearchResult obstructed_search();

} // namespace btt

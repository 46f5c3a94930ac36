#include "cmcx/io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "cmcx/errors.hpp"

namespace cmcx {

namespace {

using nlohmann::json;

json parse_document(const std::string& document, const char* what) {
    try {
        return json::parse(document);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string(what) + ": " + e.what());
    }
}

int require_int(const json& node, const char* key, const char* where) {
    const auto it = node.find(key);
    if (it == node.end() || !it->is_number_integer()) {
        throw ParseError(std::string(where) + ": missing or non-integer \"" +
                         key + "\"");
    }
    return it->get<int>();
}

double require_number(const json& node, const char* key, const char* where) {
    const auto it = node.find(key);
    if (it == node.end() || !it->is_number()) {
        throw ParseError(std::string(where) + ": missing or non-numeric \"" +
                         key + "\"");
    }
    return it->get<double>();
}

}  // namespace

Cmc load_cmc(const std::string& document) {
    const json doc = parse_document(document, "chain document");
    if (!doc.is_object()) {
        throw ParseError("chain document: top level must be an object");
    }
    const int n_states = require_int(doc, "n_states", "chain document");
    const int n_controls = require_int(doc, "n_controls", "chain document");

    Cmc cmc(n_states, n_controls);

    const auto transitions = doc.find("transitions");
    if (transitions == doc.end() || !transitions->is_array()) {
        throw ParseError("chain document: missing \"transitions\" array");
    }
    std::set<std::pair<int, int>> seen;
    for (const auto& entry : *transitions) {
        const int u = require_int(entry, "u", "transitions entry");
        const int i = require_int(entry, "i", "transitions entry");
        if (u < 0 || u >= n_controls || i < 0 || i >= n_states) {
            throw ParseError("transitions entry: (u=" + std::to_string(u) +
                             ", i=" + std::to_string(i) + ") out of range");
        }
        if (!seen.insert({u, i}).second) {
            throw ParseError("transitions entry: duplicate row (u=" +
                             std::to_string(u) + ", i=" + std::to_string(i) +
                             ")");
        }
        const auto row = entry.find("row");
        if (row == entry.end() || !row->is_array() ||
            static_cast<int>(row->size()) != n_states) {
            throw ParseError("transitions entry (u=" + std::to_string(u) +
                             ", i=" + std::to_string(i) +
                             "): \"row\" must be an array of n_states numbers");
        }
        for (int j = 0; j < n_states; ++j) {
            const auto& cell = (*row)[static_cast<std::size_t>(j)];
            if (!cell.is_number()) {
                throw ParseError("transitions entry (u=" + std::to_string(u) +
                                 ", i=" + std::to_string(i) + "): row[" +
                                 std::to_string(j) + "] is not a number");
            }
            cmc.set_probability(u, i, j, cell.get<double>());
        }
    }
    if (static_cast<int>(seen.size()) != n_states * n_controls) {
        throw ParseError("chain document: " + std::to_string(seen.size()) +
                         " transition rows present, " +
                         std::to_string(n_states * n_controls) + " required");
    }

    const auto costs = doc.find("costs");
    if (costs != doc.end()) {
        if (!costs->is_array()) {
            throw ParseError("chain document: \"costs\" must be an array");
        }
        for (const auto& entry : *costs) {
            const int i = require_int(entry, "i", "costs entry");
            const int u = require_int(entry, "u", "costs entry");
            if (u < 0 || u >= n_controls || i < 0 || i >= n_states) {
                throw ParseError("costs entry: (i=" + std::to_string(i) +
                                 ", u=" + std::to_string(u) + ") out of range");
            }
            cmc.set_cost(i, u, require_number(entry, "g", "costs entry"));
        }
    }

    validate(cmc);
    return cmc;
}

std::string save_cmc(const Cmc& cmc) {
    json doc;
    doc["n_states"] = cmc.n_states();
    doc["n_controls"] = cmc.n_controls();
    json transitions = json::array();
    for (int u = 0; u < cmc.n_controls(); ++u) {
        for (int i = 0; i < cmc.n_states(); ++i) {
            const auto row = cmc.row(u, i);
            transitions.push_back(
                {{"u", u},
                 {"i", i},
                 {"row", std::vector<double>(row.begin(), row.end())}});
        }
    }
    doc["transitions"] = std::move(transitions);
    json costs = json::array();
    for (int i = 0; i < cmc.n_states(); ++i) {
        for (int u = 0; u < cmc.n_controls(); ++u) {
            if (cmc.cost(i, u) != 0.0) {
                costs.push_back({{"i", i}, {"u", u}, {"g", cmc.cost(i, u)}});
            }
        }
    }
    doc["costs"] = std::move(costs);
    return doc.dump(2) + "\n";
}

CountTensor load_counts(const std::string& document) {
    const json doc = parse_document(document, "count document");
    if (!doc.is_object()) {
        throw ParseError("count document: top level must be an object");
    }
    const int n_states = require_int(doc, "n_states", "count document");
    const int n_controls = require_int(doc, "n_controls", "count document");

    CountTensor counts(n_controls, n_states);

    const auto cells = doc.find("counts");
    if (cells == doc.end() || !cells->is_array()) {
        throw ParseError("count document: missing \"counts\" array");
    }
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& entry : *cells) {
        const int u = require_int(entry, "u", "counts entry");
        const int i = require_int(entry, "i", "counts entry");
        const int j = require_int(entry, "j", "counts entry");
        if (u < 0 || u >= n_controls || i < 0 || i >= n_states || j < 0 ||
            j >= n_states) {
            throw ParseError("counts entry: (u=" + std::to_string(u) + ", i=" +
                             std::to_string(i) + ", j=" + std::to_string(j) +
                             ") out of range");
        }
        if (!seen.insert({u, i, j}).second) {
            throw ParseError("counts entry: duplicate cell (u=" +
                             std::to_string(u) + ", i=" + std::to_string(i) +
                             ", j=" + std::to_string(j) + ")");
        }
        const auto n_it = entry.find("n");
        if (n_it == entry.end() || !n_it->is_number_integer()) {
            throw ParseError("counts entry: missing or non-integer \"n\"");
        }
        const std::int64_t n = n_it->get<std::int64_t>();
        if (n < 0) {
            throw ParseError("counts entry: negative count " +
                             std::to_string(n));
        }
        for (std::int64_t r = 0; r < n; ++r) {
            counts.add(u, i, j);
        }
    }
    return counts;
}

std::string save_counts(const CountTensor& counts) {
    json doc;
    doc["n_states"] = counts.n_states();
    doc["n_controls"] = counts.n_controls();
    json cells = json::array();
    for (int u = 0; u < counts.n_controls(); ++u) {
        for (int i = 0; i < counts.n_states(); ++i) {
            for (int j = 0; j < counts.n_states(); ++j) {
                const std::int64_t n = counts.at(u, i, j);
                if (n != 0) {
                    cells.push_back({{"u", u}, {"i", i}, {"j", j}, {"n", n}});
                }
            }
        }
    }
    doc["counts"] = std::move(cells);
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string() + " for reading");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) {
        throw IoError("read failure on " + path.string());
    }
    return buffer.str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw IoError("write failure on " + path.string());
    }
}

}  // namespace cmcx

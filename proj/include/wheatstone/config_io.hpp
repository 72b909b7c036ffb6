#pragma once

// Flat JSON configuration documents.
//
// Recognised keys: omega1..omega4, j1, j2, j3, jx, j0, kappa1, kappa4,
// t1, t4 (or n1, n4), kappa2, kappa3, gamma2, gamma3, alpha. Every value is a
// number; any other key is rejected. omega1/omega4 default to omega2/omega3.

#include <filesystem>
#include <optional>
#include <string>

#include "wheatstone/network.hpp"

namespace wheatstone {

struct ConfigDocument {
    BridgeConfig bridge;
    std::optional<double> alpha;

    bool operator==(const ConfigDocument&) const = default;
};

ConfigDocument parse_config(const std::string& text);
ConfigDocument load_config(const std::filesystem::path& path);

/// Serialises with shortest round-trip number formatting.
std::string dump_config(const ConfigDocument& doc);
void save_config(const ConfigDocument& doc, const std::filesystem::path& path);

}  // namespace wheatstone

// Copyright 2026 The nlfem Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nlfem/assembly.hpp"
#include "nlfem/spectral.hpp"

namespace nlfem {

// JSON documents are exchanged as strings so the JSON library stays private.

std::string mesh_to_json(const Mesh& mesh);
Mesh mesh_from_json(const std::string& text);

/// { "mesh": {...}, "s": s, "S": row-major packed upper, "M": same }.
std::string system_to_json(const GramPair& gram);
GramPair system_from_json(const std::string& text);

struct SolutionRecord {
  FemFunction u;
  double p = 0.0;
  double s = 0.0;
  double energy = 0.0;
  double grad_norm = 0.0;
};
std::string solution_to_json(const SolutionRecord& rec);
SolutionRecord solution_from_json(const std::string& text);

std::string eigen_to_json(const EigenReport& rep, const std::vector<std::string>& phi_files);

/// 1D: "x u" lines over all nodes, x ascending; 2D: "x y u" per vertex.
std::string plot_data(const FemFunction& u);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace nlfem

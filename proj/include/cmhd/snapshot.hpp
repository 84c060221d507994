#pragma once

#include <filesystem>
#include <string>

#include "cmhd/clebsch.hpp"
#include "cmhd/eulerian.hpp"

namespace cmhd {

/// Field snapshot format: a short text header followed by raw little-endian
/// float64 samples, z index fastest. See README for the exact layout.
///
///   CMHD-FIELD 1
///   name <token>
///   grid <nx> <ny> <nz>
///   box <lx> <ly> <lz>
///   time <t>
///   data float64 little-endian <count>
///   <count * 8 bytes>
struct FieldSnapshot {
    std::string name;
    double time = 0.0;
    ScalarField field;
};

void write_field(const std::filesystem::path& path, const std::string& name,
                 const ScalarField& field, double time);
FieldSnapshot read_field(const std::filesystem::path& path);

/// One file per field plus a manifest (time, EOS, grid, formulation tag).
void save_clebsch_state(const std::filesystem::path& dir, const ClebschState& s,
                        const EquationOfState& eos);
ClebschState load_clebsch_state(const std::filesystem::path& dir);

void save_physical_state(const std::filesystem::path& dir, const PhysicalState& u,
                         const EquationOfState& eos);
PhysicalState load_physical_state(const std::filesystem::path& dir);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace cmhd

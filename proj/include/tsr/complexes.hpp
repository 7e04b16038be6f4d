#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tsr/finite_groups.hpp"

namespace tsr {

/// One Γ-orbit of cells.
struct OrbitCell {
    std::string id;
    int dim = 0;
    GroupTag stabilizer = GroupTag::C1;
    bool self_identified = false;

    friend bool operator==(const OrbitCell&, const OrbitCell&) = default;
};

/// `multiplicity` orbit representatives of `face` lie in the boundary of `coface`.
///
/// Two optional fields refine the record. `embedding` selects the conjugacy
/// class of the coface stabilizer inside the face stabilizer (index into
/// subgroup_class_representatives); two records for the same pair with
/// different embeddings are the two ends of a loop. `sign` pins the
/// orientation coefficient used by the Bredon differential (0 = derived).
struct Incidence {
    std::string face;
    std::string coface;
    int multiplicity = 1;
    int embedding = 0;
    int sign = 0;

    friend bool operator==(const Incidence&, const Incidence&) = default;
};

struct OrbitComplex {
    bool rigid = false;
    std::vector<OrbitCell> cells;
    std::vector<Incidence> incidences;

    const OrbitCell* find(std::string_view id) const;
    const OrbitCell& cell(std::string_view id) const;
    bool empty() const { return cells.empty(); }
    /// Largest cell dimension, -1 for the empty complex.
    int dimension() const;
    std::vector<const Incidence*> cofaces_of(std::string_view id) const;
    std::vector<const Incidence*> faces_of(std::string_view id) const;

    friend bool operator==(const OrbitComplex&, const OrbitComplex&) = default;
};

enum class ComponentType { Circle, Edge, GraphFive, GraphTwo, Other };

std::string_view to_string(ComponentType t);

/// Checks ids, endpoints, dimensions and multiplicities. Throws ValidationError.
void validate_complex(const OrbitComplex& x);

OrbitComplex parse_complex(std::string_view text);
std::string serialize_complex(const OrbitComplex& x);
OrbitComplex load_complex(const std::filesystem::path& path);

/// Cells whose stabilizer order is divisible by ell, with the incidences among them.
OrbitComplex torsion_subcomplex(const OrbitComplex& x, int ell);

/// Components in order of their first cell.
std::vector<OrbitComplex> connected_components(const OrbitComplex& x);

/// Shape of a connected 1-dimensional component of a reduced ell-torsion subcomplex.
ComponentType classify_component(const OrbitComplex& x, int ell);

}  // namespace tsr

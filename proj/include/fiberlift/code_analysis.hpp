#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fiberlift/labeled_graph.hpp"

namespace fiberlift {

struct DegreeReport {
    bool finite_to_one = false;
    std::optional<int> degree;
    Word magic_word;  ///< over the Y alphabet
    std::size_t magic_position = 0;
    double entropy_x = 0.0;
    double entropy_y = 0.0;
};

/// A lift orbit over a periodic image orbit of period p: a periodic point of
/// least period winding * p. `aligned` is one period of the lift starting at an
/// X-point whose image is the base word at phase 0.
struct LiftOrbit {
    PeriodicOrbit orbit;
    int winding = 1;
    Word aligned;
};

struct PhasedFiberDecomposition {
    PeriodicOrbit base_orbit;
    std::vector<LiftOrbit> lift_orbits;
    int fiber_size = 0;
};

/// No graph diamond: no equal-label pair path leaves the diagonal and returns to it.
/// Throws NotIrreducible unless g is essential and irreducible.
bool is_finite_to_one(const LabeledGraph& g);

/// No two distinct left-asymptotic (resp. right-asymptotic) points share an image.
bool is_right_closing(const LabeledGraph& g);
bool is_left_closing(const LabeledGraph& g);
/// Finite-to-one and bi-closing, which for codes on irreducible SFTs is
/// equivalent to every image point having exactly d preimages.
bool is_constant_to_one(const LabeledGraph& g);

/// Finite-to-one verdict, entropies of X and its image, and, when finite-to-one,
/// the degree with a magic-word certificate. Never throws InfiniteToOne.
DegreeReport degree_report(const LabeledGraph& g);

/// Degree report for a finite-to-one code; throws InfiniteToOne otherwise.
DegreeReport compute_degree(const LabeledGraph& g);

/// Number of distinct X-symbols at position i over preimage paths of w.
std::size_t d_star(const LabeledGraph& g, std::span<const int> y_word, std::size_t position);

/// All X-paths labeled w, sorted. The graph is trimmed first, so each returned
/// path extends to a bi-infinite point. The empty word has the empty preimage.
std::vector<Word> preimage_words(const LabeledGraph& g, std::span<const int> y_word);

/// Preimage words in the base alphabet of a recoded graph (length |w| + memory + anticipation).
std::vector<Word> preimage_base_words(const LabeledGraph& g, std::span<const int> y_word);

/// Fiber of the periodic point y^∞ via the phased graph on (symbol, phase mod p).
PhasedFiberDecomposition periodic_fiber(const LabeledGraph& g, const PeriodicOrbit& y);

/// Periodic orbits of the image shift with least period ≤ max_period, in canonical form.
std::vector<PeriodicOrbit> enumerate_image_orbits(const LabeledGraph& g, int max_period);

}  // namespace fiberlift

#pragma once

#include <optional>
#include <string_view>

#include "dictlearn/imaging.hpp"
#include "dictlearn/matrix.hpp"

namespace dictlearn {

/// How a dictionary column is turned into a tile.
enum class AtomLayout {
  kColorPatch,  // 3p^2 column, R/B/G blocks -> p x p color tile
  kGrayPatch,   // p^2 column -> p x p gray tile
  kFrame,       // height*width column -> height x width gray tile
  kTemporal,    // m*k column -> m curves of k points plotted in one tile
};

/// Throws FormatError for names other than patch, gray-patch, frame, temporal.
AtomLayout parse_atom_layout(std::string_view name);

struct RenderOptions {
  AtomLayout layout = AtomLayout::kColorPatch;
  int p = 0;             // patch layouts
  int height = 0;        // frame layout
  int width = 0;         // frame layout
  int k = 0;             // temporal layout: points per curve (m = rows / k)
  int max_atoms = 0;     // 0 = all columns
  int columns = 0;       // 0 = ceil(sqrt(atom count))
  int scale = 0;         // pixel magnification, 0 = automatic
  int tile_size = 64;    // temporal tiles are tile_size x tile_size
};

/// Grid of atoms, each min-max normalized to [0, 1] for display only.
/// Tiles are separated by a 1-pixel white border. Throws ShapeError if W's
/// row count does not match the layout.
ColorImage render_dictionary_grid(const Matrix& W, const RenderOptions& options);

}  // namespace dictlearn

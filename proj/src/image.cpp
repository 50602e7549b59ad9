#include "splace/image.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "splace/errors.hpp"

namespace splace {

void export_field_image(const Eigen::VectorXd& field, const GridShape& grid,
                        const std::string& path, double lo, double hi,
                        const std::vector<std::uint32_t>& markers) {
  if (grid.points() != static_cast<std::uint64_t>(field.size())) {
    throw ConfigError("export_field_image: grid shape does not match field length");
  }
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw ConfigError("export_field_image: value range must be finite with min < max");
  }
  std::vector<std::uint8_t> pixels(field.size());
  const double scale = 255.0 / (hi - lo);
  for (Eigen::Index i = 0; i < field.size(); ++i) {
    const double v = (field[i] - lo) * scale;
    pixels[static_cast<std::size_t>(i)] =
        static_cast<std::uint8_t>(std::lround(std::min(255.0, std::max(0.0, v))));
  }
  for (std::uint32_t m : markers) {
    if (m >= pixels.size()) {
      std::ostringstream msg;
      msg << "export_field_image: marker " << m << " outside the grid";
      throw ConfigError(msg.str());
    }
    pixels[m] = 255;
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("export_field_image: cannot open " + path);
  out << "P5\n" << grid.n_h << " " << grid.n_v << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw DataError("export_field_image: write failed for " + path);
}

}  // namespace splace

#ifndef BRINK_REPORT_HPP
#define BRINK_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "brink/solver.hpp"

namespace brink {

/// Doubles in every data file carry 17 significant digits so values
/// round-trip exactly.
std::string format_g17(double v);

/// Minimal JSON emitter with insertion-ordered keys and g17 numbers;
/// enough for the flat report objects this tool writes.
class JsonObject {
public:
    JsonObject& field(const std::string& key, double v);
    JsonObject& field(const std::string& key, int v);
    JsonObject& field(const std::string& key, std::size_t v);
    JsonObject& field(const std::string& key, bool v);
    JsonObject& field(const std::string& key, const std::string& v);
    JsonObject& field(const std::string& key, const char* v);
    JsonObject& field_raw(const std::string& key, const std::string& json);
    std::string str() const;

private:
    std::vector<std::string> parts_;
};

std::string json_escape(const std::string& s);
std::string json_array(const std::vector<double>& xs);

/// Wavefunction CSV: header `r,u,psi,V`, one row per grid point.
/// psi = u for the 1d symmetries; for swave3d psi = u/r and the r = 0
/// entry is left blank.
void write_wavefunction_csv(std::ostream& os, const Wavefunction& wf, const RadialModel& m);

/// Reads a wavefunction CSV produced by write_wavefunction_csv (or any
/// file with the same header).  Requires a uniformly spaced r column
/// starting at 0.  Throws std::runtime_error on malformed input.
Wavefunction read_wavefunction_csv(std::istream& is, Symmetry sym);

}  // namespace brink

#endif

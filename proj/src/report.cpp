#include "brink/report.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace brink {

std::string format_g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s)
{
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

JsonObject& JsonObject::field(const std::string& key, double v)
{
    return field_raw(key, format_g17(v));
}
JsonObject& JsonObject::field(const std::string& key, int v)
{
    return field_raw(key, std::to_string(v));
}
JsonObject& JsonObject::field(const std::string& key, std::size_t v)
{
    return field_raw(key, std::to_string(v));
}
JsonObject& JsonObject::field(const std::string& key, bool v)
{
    return field_raw(key, v ? "true" : "false");
}
JsonObject& JsonObject::field(const std::string& key, const std::string& v)
{
    return field_raw(key, "\"" + json_escape(v) + "\"");
}
JsonObject& JsonObject::field(const std::string& key, const char* v)
{
    return field(key, std::string(v));
}
JsonObject& JsonObject::field_raw(const std::string& key, const std::string& json)
{
    parts_.push_back("\"" + json_escape(key) + "\":" + json);
    return *this;
}
std::string JsonObject::str() const
{
    std::string out = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ",";
        out += parts_[i];
    }
    out += "}";
    return out;
}

std::string json_array(const std::vector<double>& xs)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += format_g17(xs[i]);
    }
    out += "]";
    return out;
}

void write_wavefunction_csv(std::ostream& os, const Wavefunction& wf, const RadialModel& m)
{
    os << "r,u,psi,V\n";
    for (std::size_t i = 0; i < wf.u.size(); ++i) {
        const double r = wf.grid.point(i);
        os << format_g17(r) << ',' << format_g17(wf.u[i]) << ',';
        if (wf.symmetry == Symmetry::swave3d && i == 0)
            os << "";  // psi undefined at the origin
        else
            os << format_g17(wf.psi(i));
        os << ',' << format_g17(potential_value(m, r)) << '\n';
    }
}

Wavefunction read_wavefunction_csv(std::istream& is, Symmetry sym)
{
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("wavefunction csv: empty file");
    if (line.rfind("r,u,psi,V", 0) != 0)
        throw std::runtime_error("wavefunction csv: expected header r,u,psi,V");

    std::vector<double> r, u;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        double vals[2];
        for (int c = 0; c < 2; ++c) {
            if (!std::getline(row, cell, ','))
                throw std::runtime_error("wavefunction csv: short row: " + line);
            try {
                vals[c] = std::stod(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("wavefunction csv: bad number: " + cell);
            }
        }
        r.push_back(vals[0]);
        u.push_back(vals[1]);
    }
    if (r.size() < 3) throw std::runtime_error("wavefunction csv: needs at least 3 rows");
    if (std::abs(r.front()) > 1e-12) throw std::runtime_error("wavefunction csv: grid must start at r = 0");
    const double h = r[1] - r[0];
    if (!(h > 0.0)) throw std::runtime_error("wavefunction csv: r column must increase");
    for (std::size_t i = 0; i < r.size(); ++i)
        if (std::abs(r[i] - static_cast<double>(i) * h) > 1e-6 * h * std::max<double>(1, i))
            throw std::runtime_error("wavefunction csv: r column is not uniformly spaced");

    Wavefunction wf;
    wf.grid = Grid{r.back(), r.size()};
    wf.u = std::move(u);
    wf.symmetry = sym;
    wf.normalized = false;
    return wf;
}

}  // namespace brink

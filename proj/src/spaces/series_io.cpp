#include "mildns/errors.hpp"
#include "mildns/format.hpp"
#include "mildns/spaces.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace mildns::spaces {

void write_series_csv(std::ostream& out, const SeriesInfo& info,
                      const std::vector<NormSample>& series) {
    out << "# mildns norm series\n";
    out << "# dim=" << info.dim << " kind=" << info.kind << " s=" << format_double(info.s)
        << " q=" << format_double(info.q) << " n=" << info.n
        << " exponent=" << format_double(info.exponent) << '\n';
    out << "t,raw_norm,rescaled_norm,s,q,n\n";
    for (const auto& p : series) {
        out << format_double(p.t) << ',' << format_double(p.raw) << ','
            << format_double(p.rescaled) << ',' << format_double(info.s) << ','
            << format_double(info.q) << ',' << info.n << '\n';
    }
}

namespace {

double parse_number(const std::string& text) {
    std::istringstream in(text);
    in.imbue(std::locale::classic());
    double v = 0.0;
    in >> v;
    if (in.fail()) {
        if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
        if (text == "inf") return std::numeric_limits<double>::infinity();
        throw Error("malformed number '" + text + "' in series file");
    }
    return v;
}

} // namespace

SeriesFile read_series_csv(std::istream& in) {
    SeriesFile file;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream fields(line.substr(1));
            std::string token;
            while (fields >> token) {
                const auto eq = token.find('=');
                if (eq == std::string::npos) continue;
                const auto key = token.substr(0, eq);
                const auto value = token.substr(eq + 1);
                if (key == "dim") file.info.dim = static_cast<int>(parse_number(value));
                else if (key == "kind") file.info.kind = value;
                else if (key == "s") file.info.s = parse_number(value);
                else if (key == "q") file.info.q = parse_number(value);
                else if (key == "n") file.info.n = static_cast<int>(parse_number(value));
                else if (key == "exponent") file.info.exponent = parse_number(value);
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("t,raw_norm", 0) != 0) throw Error("series file lacks a column header");
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(row, cell, ',')) cells.push_back(parse_number(cell));
        if (cells.size() < 3) throw Error("series row has too few columns");
        file.samples.push_back({cells[0], cells[1], cells[2]});
    }
    if (!header_seen) throw Error("series file lacks a column header");
    return file;
}

} // namespace mildns::spaces

#include "aflaz/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace aflaz::io {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_double(const std::string& cell, long long line_no) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(cell, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != cell.size() || !std::isfinite(v)) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    }
    return v;
}

long long parse_index(const std::string& cell, long long line_no) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || v < 0) {
        throw std::invalid_argument("line " + std::to_string(line_no) + ": bad member index '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0) return "0";
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

SequenceSet read_sequences(std::istream& in) {
    std::string line;
    long long line_no = 0;
    auto next = [&](std::string& out) {
        while (std::getline(in, line)) {
            ++line_no;
            out = trim(line);
            if (!out.empty()) return true;
        }
        return false;
    };

    std::string text;
    if (!next(text)) throw std::invalid_argument("empty sequence file");
    SequenceFormat format;
    if (text == "# format=iq") {
        format = SequenceFormat::iq;
    } else if (text == "# format=phase") {
        format = SequenceFormat::phase;
    } else {
        throw std::invalid_argument("first line must be '# format=iq' or '# format=phase'");
    }

    if (!next(text)) throw std::invalid_argument("missing column header");
    const std::vector<std::string> header = split_csv(text);
    const bool with_seq = !header.empty() && header.front() == "seq";
    const std::vector<std::string> expected_values =
        format == SequenceFormat::iq ? std::vector<std::string>{"re", "im"} : std::vector<std::string>{"phase"};
    std::vector<std::string> expected = expected_values;
    if (with_seq) expected.insert(expected.begin(), "seq");
    if (header != expected) {
        std::string want;
        for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
        throw std::invalid_argument("column header must be '" + want + "'");
    }

    std::map<long long, std::vector<std::complex<double>>> members;
    while (next(text)) {
        if (text.front() == '#') continue;
        const std::vector<std::string> cells = split_csv(text);
        if (cells.size() != expected.size()) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(expected.size()) + " columns");
        }
        std::size_t c = 0;
        const long long member = with_seq ? parse_index(cells[c++], line_no) : 0;
        std::complex<double> z;
        if (format == SequenceFormat::iq) {
            z = {parse_double(cells[c], line_no), parse_double(cells[c + 1], line_no)};
        } else {
            z = std::polar(1.0, parse_double(cells[c], line_no));
        }
        members[member].push_back(z);
    }
    if (members.empty()) throw std::invalid_argument("sequence file has no entries");

    std::vector<Sequence> out;
    long long expected_index = 0;
    for (auto& [index, entries] : members) {
        if (index != expected_index++) throw std::invalid_argument("member indices must be 0, 1, 2, ...");
        Sequence::Vector v = Eigen::Map<Sequence::Vector>(entries.data(), static_cast<Index>(entries.size()));
        out.emplace_back(std::move(v));
    }
    return SequenceSet(std::move(out));
}

SequenceSet read_sequences_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_sequences(in);
}

void write_sequences(std::ostream& out, const SequenceSet& set, SequenceFormat format) {
    const bool with_seq = set.count() > 1;
    out << (format == SequenceFormat::iq ? "# format=iq\n" : "# format=phase\n");
    out << (with_seq ? "seq," : "") << (format == SequenceFormat::iq ? "re,im\n" : "phase\n");
    for (Index m = 0; m < set.count(); ++m) {
        for (Index t = 0; t < set.length(); ++t) {
            const std::complex<double> z = set[m][t];
            if (with_seq) out << m << ',';
            if (format == SequenceFormat::iq) {
                out << format_number(z.real()) << ',' << format_number(z.imag()) << '\n';
            } else {
                out << format_number(std::arg(z)) << '\n';
            }
        }
    }
}

void write_surfaces(std::ostream& out, const SequenceSet& set, const LazSpec& laz, SurfaceMethod method) {
    out << "m,m_prime,tau,nu,mag_sq\n";
    for (Index m = 0; m < set.count(); ++m) {
        for (Index mp = 0; mp < set.count(); ++mp) {
            const AfSurface s = af_surface(set[m], set[mp], laz, method);
            for (Index tau = s.tau_min(); tau <= -s.tau_min(); ++tau) {
                for (Index nu = s.nu_min(); nu <= -s.nu_min(); ++nu) {
                    out << m << ',' << mp << ',' << tau << ',' << nu << ',' << format_number(s.at(tau, nu)) << '\n';
                }
            }
        }
    }
}

std::string bound_csv_row(const BoundReport& r) {
    std::ostringstream os;
    os << r.name << ',' << r.params.n << ',' << r.params.m << ',' << r.params.zx << ',' << r.params.zy << ','
       << r.params.d << ',' << (r.q ? std::to_string(*r.q) : std::string()) << ',' << format_number(r.value) << ','
       << to_string(r.status);
    return os.str();
}

void write_bounds_csv(std::ostream& out, const std::vector<BoundReport>& reports) {
    out << kBoundCsvHeader << '\n';
    for (const auto& r : reports) out << bound_csv_row(r) << '\n';
}

nlohmann::ordered_json to_json(const BoundReport& r) {
    auto number = [](double v) -> nlohmann::ordered_json {
        if (!std::isfinite(v)) return nullptr;
        return v;
    };
    nlohmann::ordered_json j;
    j["name"] = r.name;
    j["value"] = number(r.value);
    j["raw"] = number(r.raw);
    j["status"] = std::string(to_string(r.status));
    j["note"] = r.note;
    j["params"] = {{"N", r.params.n}, {"M", r.params.m}, {"Zx", r.params.zx},
                   {"Zy", r.params.zy}, {"D", r.params.d},  {"E", r.params.e()}};
    j["q"] = r.q ? nlohmann::ordered_json(*r.q) : nlohmann::ordered_json(nullptr);
    if (r.tradeoff) {
        j["tradeoff"] = {{"coef_theta_c_sq", number(r.tradeoff->coef_c)},
                         {"coef_theta_a_sq", number(r.tradeoff->coef_a)},
                         {"rhs", number(r.tradeoff->rhs)}};
    } else {
        j["tradeoff"] = nullptr;
    }
    if (r.weight) {
        const WeightVector& w = *r.weight;
        j["weight"] = {{"family", std::string(to_string(w.family))},
                       {"q", w.q ? nlohmann::ordered_json(*w.q) : nlohmann::ordered_json(nullptr)},
                       {"values", std::vector<double>(w.values.data(), w.values.data() + w.values.size())}};
    } else {
        j["weight"] = nullptr;
    }
    return j;
}

nlohmann::ordered_json to_json(const CheckOutcome& c) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    return {{"check", c.check}, {"params", params}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}, {"seed", c.seed}};
}

nlohmann::ordered_json to_json(const ThetaReport& t) {
    auto witness = [](const std::optional<AfWitness>& w) -> nlohmann::ordered_json {
        if (!w) return nullptr;
        return {{"m", w->m}, {"m_prime", w->m_prime}, {"tau", w->tau}, {"nu", w->nu}};
    };
    nlohmann::ordered_json j;
    j["theta_a_sq"] = t.theta_a_sq;
    j["theta_c_sq"] = t.theta_c_sq ? nlohmann::ordered_json(*t.theta_c_sq) : nlohmann::ordered_json(nullptr);
    j["theta_max_sq"] = t.theta_max_sq;
    j["argmax_a"] = witness(t.argmax_a);
    j["argmax_c"] = witness(t.argmax_c);
    return j;
}

std::string Table::to_csv() const {
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    emit(header);
    for (const auto& row : rows) {
        if (row.size() != header.size()) throw std::logic_error("table row width differs from header");
        emit(row);
    }
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace aflaz::io

#include "cluvalid/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace cluvalid {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

Partition parse_partition_text(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        lines.push_back(t);
    }
    std::vector<std::string> labels;
    if (lines.size() == 1 && lines.front().find(',') != std::string::npos) {
        std::istringstream fields(lines.front());
        std::string f;
        while (std::getline(fields, f, ',')) labels.push_back(trim(f));
    } else {
        labels = std::move(lines);
    }
    if (labels.empty()) throw std::invalid_argument("empty partition");
    return Partition::from_labels(std::span<const std::string>(labels));
}

Partition load_partition(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open partition file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_partition_text(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string serialize_partition(const Partition& p) {
    std::ostringstream out;
    for (int32_t l : p.labels()) out << l << '\n';
    return out.str();
}

std::string partition_to_line(const Partition& p) {
    std::ostringstream out;
    for (size_t i = 0; i < p.labels().size(); ++i) {
        if (i) out << ',';
        out << p.labels()[i];
    }
    return out.str();
}

std::vector<TripletPaths> load_triplet_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triplet manifest: " + path);
    std::vector<TripletPaths> out;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        std::istringstream fields(t);
        TripletPaths tp;
        if (!(fields >> tp.reference >> tp.candidate1 >> tp.candidate2))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected three whitespace-separated paths");
        std::string rest;
        if (fields >> rest)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": trailing fields");
        out.push_back(std::move(tp));
    }
    return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\n") != std::string::npos) {
            out_ << '"';
            for (char c : f) {
                if (c == '"') out_ << '"';
                out_ << c;
            }
            out_ << '"';
        } else {
            out_ << f;
        }
    }
    out_ << '\n';
}

}  // namespace cluvalid

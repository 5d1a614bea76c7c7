#include "lgap/trajectory.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace lgap {

Trajectory::Trajectory(Eigen::MatrixXd samples, int inputs, int outputs)
    : samples_(std::move(samples)), inputs_(inputs), outputs_(outputs) {
    if (inputs_ < 0 || outputs_ < 0 || inputs_ + outputs_ < 1) {
        throw DimensionError("trajectory needs at least one channel");
    }
    if (samples_.rows() < 1) {
        throw DimensionError("trajectory needs at least one sample");
    }
    if (samples_.cols() != inputs_ + outputs_) {
        throw DimensionError("sample width does not match channel counts");
    }
}

std::string format_full(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& text, int line_no) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": not a number: '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) {
        throw ParseError("line " + std::to_string(line_no) + ": trailing garbage in '" + text + "'");
    }
    return v;
}

}  // namespace

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open trajectory file: " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty trajectory file: " + path.string());
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const auto header = split_csv_line(line);
    if (header.empty() || header[0] != "t") {
        throw ParseError("line 1: header must start with 't', got '" + line + "'");
    }
    int inputs = 0, outputs = 0;
    for (std::size_t i = 1; i < header.size(); ++i) {
        const std::string& h = header[i];
        if (h.size() >= 2 && h[0] == 'u' && outputs == 0) {
            ++inputs;
        } else if (h.size() >= 2 && h[0] == 'y') {
            ++outputs;
        } else {
            throw ParseError("line 1: unexpected column '" + h + "' (want u1..um then y1..yp)");
        }
    }
    if (inputs + outputs == 0) throw ParseError("line 1: no data columns in header");

    std::vector<std::vector<double>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields, got " +
                             std::to_string(fields.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size() - 1);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            row.push_back(parse_double(fields[i], line_no));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("trajectory file has a header but no rows");

    Eigen::MatrixXd samples(static_cast<Eigen::Index>(rows.size()), inputs + outputs);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        for (int c = 0; c < inputs + outputs; ++c) {
            samples(static_cast<Eigen::Index>(t), c) = rows[t][static_cast<std::size_t>(c)];
        }
    }
    return Trajectory(std::move(samples), inputs, outputs);
}

void write_trajectory_csv(const Trajectory& w, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write trajectory file: " + path.string());
    out << 't';
    for (int i = 0; i < w.inputs(); ++i) out << ",u" << (i + 1);
    for (int i = 0; i < w.outputs(); ++i) out << ",y" << (i + 1);
    out << '\n';
    for (Eigen::Index t = 0; t < w.length(); ++t) {
        out << t;
        for (int c = 0; c < w.width(); ++c) out << ',' << format_full(w.samples()(t, c));
        out << '\n';
    }
}

}  // namespace lgap

#include "linlasso/ingest.hpp"

#include "linlasso/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace linlasso {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    s = s.substr(first, last - first + 1);
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
    return std::string(s);
}

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(delim, start);
        out.push_back(trim(std::string_view(line).substr(start, pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

bool parse_real(const std::string& s, double& value) {
    if (s.empty()) return false;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    return ec == std::errc() && ptr == end;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

ResponseSpec ResponseSpec::parse(const std::string& text) {
    ResponseSpec spec;
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
    if (!text.empty() && ec == std::errc() && ptr == text.data() + text.size()) {
        if (index == 0) throw UsageError("response index is 1-based");
        spec.key = index;
    } else {
        spec.key = text;
    }
    return spec;
}

RawDataset parse_table(std::istream& in, const ResponseSpec& response, const LoadOptions& options) {
    std::string line;
    if (!std::getline(in, line) || is_blank(line)) throw DataError("missing header row");
    const auto header = split(line, options.delimiter);
    const std::size_t cols = header.size();

    std::vector<std::vector<std::string>> cells(cols);
    std::size_t row = 0;
    std::vector<std::string> pending_blank;
    while (std::getline(in, line)) {
        ++row;
        if (is_blank(line)) {
            pending_blank.push_back(line);
            continue;
        }
        if (!pending_blank.empty()) {
            throw DataError("blank line at row " + std::to_string(row - pending_blank.size()));
        }
        auto fields = split(line, options.delimiter);
        if (fields.size() != cols) {
            std::ostringstream os;
            os << "ragged row " << row << ": expected " << cols << " fields, got " << fields.size();
            throw DataError(os.str());
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (fields[j].empty()) {
                std::ostringstream os;
                os << "missing cell at (" << row << ", " << j + 1 << ")";
                throw DataError(os.str());
            }
            cells[j].push_back(std::move(fields[j]));
        }
    }

    RawDataset raw;
    raw.n_rows = cells.empty() ? 0 : cells.front().size();
    raw.columns.reserve(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        RawColumn col;
        col.name = header[j].empty() ? "V" + std::to_string(j + 1) : header[j];
        std::vector<double> values(cells[j].size());
        bool numeric = true;
        for (std::size_t i = 0; i < cells[j].size() && numeric; ++i) {
            numeric = parse_real(cells[j][i], values[i]);
        }
        if (numeric) {
            col.cells = std::move(values);
        } else {
            col.cells = std::move(cells[j]);
        }
        raw.columns.push_back(std::move(col));
    }

    if (const auto* idx = std::get_if<std::size_t>(&response.key)) {
        if (*idx < 1 || *idx > cols) {
            throw DataError("response column " + std::to_string(*idx) + " out of range");
        }
        raw.response = *idx - 1;
    } else {
        const auto& name = std::get<std::string>(response.key);
        const auto it = std::find_if(raw.columns.begin(), raw.columns.end(),
                                     [&](const RawColumn& c) { return c.name == name; });
        if (it == raw.columns.end()) throw DataError("missing response column '" + name + "'");
        raw.response = static_cast<std::size_t>(it - raw.columns.begin());
    }
    return raw;
}

RawDataset load_table(const std::filesystem::path& path, const ResponseSpec& response,
                      const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return parse_table(in, response, options);
}

NumericDataset binarize_nominals(const RawDataset& raw) {
    const auto& resp = raw.columns.at(raw.response);
    if (!resp.is_numeric()) throw DataError("response column '" + resp.name + "' is nominal");

    struct Out {
        std::string name;
        std::vector<double> values;
    };
    std::vector<Out> predictors;
    std::map<std::string, LevelSource> provenance;

    for (std::size_t j = 0; j < raw.columns.size(); ++j) {
        if (j == raw.response) continue;
        const auto& col = raw.columns[j];
        if (col.is_numeric()) {
            predictors.push_back({col.name, col.numeric()});
            continue;
        }
        const auto& labels = col.nominal();
        const std::set<std::string> levels(labels.begin(), labels.end());
        if (levels.size() < 2) {
            throw DataError("nominal column '" + col.name + "' has a single level");
        }
        // std::set iterates lexicographically; the first level is the reference.
        for (auto it = std::next(levels.begin()); it != levels.end(); ++it) {
            Out ind{col.name + "=" + *it, std::vector<double>(labels.size())};
            for (std::size_t i = 0; i < labels.size(); ++i) ind.values[i] = labels[i] == *it ? 1.0 : 0.0;
            provenance[ind.name] = LevelSource{col.name, *it};
            predictors.push_back(std::move(ind));
        }
    }

    const std::size_t n = raw.n_rows;
    if (predictors.empty()) throw DataError("no predictor columns");
    if (n < 3) throw DataError("need at least 3 rows, got " + std::to_string(n));

    NumericDataset data;
    data.y = Eigen::Map<const Eigen::VectorXd>(resp.numeric().data(), static_cast<Eigen::Index>(n));
    data.X.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(predictors.size()));
    data.names.push_back(resp.name);
    for (std::size_t j = 0; j < predictors.size(); ++j) {
        data.X.col(static_cast<Eigen::Index>(j)) =
            Eigen::Map<const Eigen::VectorXd>(predictors[j].values.data(), static_cast<Eigen::Index>(n));
        data.names.push_back(predictors[j].name);
    }
    data.provenance = std::move(provenance);

    auto constant = [](const Eigen::VectorXd& v) { return (v.array() == v(0)).all(); };
    if (constant(data.y)) throw DataError("response column '" + resp.name + "' is constant");
    for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
        if (constant(data.X.col(j))) {
            throw DataError("predictor column '" + data.names[static_cast<std::size_t>(j) + 1] +
                            "' is constant");
        }
    }
    return data;
}

NumericDataset NumericDataset::subset_rows(const std::vector<std::size_t>& rows) const {
    NumericDataset out;
    out.names = names;
    out.provenance = provenance;
    out.y.resize(static_cast<Eigen::Index>(rows.size()));
    out.X.resize(static_cast<Eigen::Index>(rows.size()), X.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto src = static_cast<Eigen::Index>(rows[i]);
        out.y(static_cast<Eigen::Index>(i)) = y(src);
        out.X.row(static_cast<Eigen::Index>(i)) = X.row(src);
    }
    return out;
}

NumericDataset NumericDataset::drop_predictors(const std::vector<std::string>& drop) const {
    for (const auto& name : drop) {
        if (std::find(names.begin() + 1, names.end(), name) == names.end()) {
            throw UsageError("unknown predictor '" + name + "'");
        }
    }
    std::vector<Eigen::Index> keep;
    for (std::size_t j = 1; j < names.size(); ++j) {
        if (std::find(drop.begin(), drop.end(), names[j]) == drop.end()) {
            keep.push_back(static_cast<Eigen::Index>(j - 1));
        }
    }
    NumericDataset out;
    out.y = y;
    out.X = X(Eigen::all, keep);
    out.names.push_back(names.front());
    for (auto j : keep) {
        const auto& name = names[static_cast<std::size_t>(j) + 1];
        out.names.push_back(name);
        if (auto it = provenance.find(name); it != provenance.end()) out.provenance.insert(*it);
    }
    return out;
}

}  // namespace linlasso

#include "rewrap/dataset_io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rewrap {

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_dataset(std::ostream& os, const RegressionDataset& data) {
    data.validate();
    os << "# rewrap-dataset v1 n=" << data.n() << " d=" << data.d()
       << " sigma=" << fmt17(data.meta.sigma) << " seed=" << data.meta.seed
       << "\n";
    if (data.meta.w_true) {
        os << "# w_true";
        for (Eigen::Index j = 0; j < data.meta.w_true->size(); ++j)
            os << ' ' << fmt17((*data.meta.w_true)[j]);
        os << "\n";
    }
    if (data.meta.corruption_support) {
        os << "# corrupted";
        for (const int i : *data.meta.corruption_support) os << ' ' << i;
        os << "\n";
    }
    for (Eigen::Index i = 0; i < data.n(); ++i) {
        for (Eigen::Index j = 0; j < data.d(); ++j)
            os << fmt17(data.X(j, i)) << ' ';
        os << fmt17(data.y[i]) << "\n";
    }
    if (!os) throw IoError("dataset write failed");
}

void write_dataset(const std::string& path, const RegressionDataset& data) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    write_dataset(os, data);
}

RegressionDataset read_dataset(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError("dataset: empty input");

    long n = 0, d = 0;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    if (std::sscanf(line.c_str(),
                    "# rewrap-dataset v1 n=%ld d=%ld sigma=%lf seed=%" SCNu64,
                    &n, &d, &sigma, &seed) != 4)
        throw ParseError("dataset: bad header: " + line);
    if (n < 1 || d < 1) throw ParseError("dataset: bad dimensions in header");

    RegressionDataset data;
    data.meta.sigma = sigma;
    data.meta.seed = seed;
    data.X.resize(d, n);
    data.y.resize(n);

    long row = 0;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string tag;
            ss >> tag;
            if (tag == "w_true") {
                Vector w(d);
                for (long j = 0; j < d; ++j)
                    if (!(ss >> w[j]))
                        throw ParseError("dataset: short w_true line");
                data.meta.w_true = std::move(w);
            } else if (tag == "corrupted") {
                std::vector<int> support;
                int idx;
                while (ss >> idx) support.push_back(idx);
                data.meta.corruption_support = std::move(support);
            } else {
                throw ParseError("dataset: unknown directive: " + tag);
            }
            continue;
        }
        if (row >= n) throw ParseError("dataset: more data rows than n");
        std::istringstream ss(line);
        for (long j = 0; j < d; ++j)
            if (!(ss >> data.X(j, row)))
                throw ParseError("dataset: short data row " + std::to_string(row));
        if (!(ss >> data.y[row]))
            throw ParseError("dataset: missing response in row " +
                             std::to_string(row));
        ++row;
    }
    if (row != n)
        throw ParseError("dataset: expected " + std::to_string(n) +
                         " rows, got " + std::to_string(row));
    data.validate();
    return data;
}

RegressionDataset read_dataset(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open for reading: " + path);
    return read_dataset(is);
}

}  // namespace rewrap

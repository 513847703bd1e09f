#pragma once

#include "esplab/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <initializer_list>
#include <span>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace esplab {

/// Dense real matrix, row-major. Entries are validated finite on construction.
class matrix {
public:
    matrix() = default;

    matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {
        if (rows == 0 || cols == 0)
            throw dimension_error("matrix dimensions must be positive");
        if (!std::isfinite(fill)) throw domain_error("matrix entries must be finite");
    }

    matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (rows == 0 || cols == 0)
            throw dimension_error("matrix dimensions must be positive");
        if (data_.size() != rows * cols)
            throw dimension_error("entry count does not match rows*cols");
        check_finite();
    }

    matrix(std::initializer_list<std::initializer_list<double>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        if (rows_ == 0 || cols_ == 0)
            throw dimension_error("matrix dimensions must be positive");
        data_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw dimension_error("ragged initializer rows");
            data_.insert(data_.end(), r.begin(), r.end());
        }
        check_finite();
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const double> entries() const { return data_; }
    std::span<double> entries_mut() { return data_; }

    static matrix identity(std::size_t n) {
        matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    /// y = M x
    void apply(std::span<const double> x, std::span<double> y) const {
        if (x.size() != cols_ || y.size() != rows_)
            throw dimension_error("matvec dimension mismatch");
        for (std::size_t i = 0; i < rows_; ++i) {
            const double* r = data_.data() + i * cols_;
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += r[j] * x[j];
            y[i] = acc;
        }
    }

    std::vector<double> apply(std::span<const double> x) const {
        std::vector<double> y(rows_);
        apply(x, y);
        return y;
    }

    matrix transpose() const {
        matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    matrix operator*(const matrix& b) const {
        if (cols_ != b.rows_) throw dimension_error("matmul dimension mismatch");
        matrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const double aik = (*this)(i, k);
                if (aik == 0.0) continue;
                const double* br = b.data_.data() + k * b.cols_;
                double* cr = c.data_.data() + i * c.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j) cr[j] += aik * br[j];
            }
        }
        return c;
    }

    matrix scaled(double c) const {
        matrix m = *this;
        for (double& v : m.data_) v *= c;
        m.check_finite();
        return m;
    }

    double frobenius_norm() const {
        double acc = 0.0;
        for (double v : data_) acc += v * v;
        return std::sqrt(acc);
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : data_) m = std::max(m, std::fabs(v));
        return m;
    }

    /// CSV: one row per line, ',' separators, '.' decimal, no header.
    std::string to_csv() const {
        std::string out;
        char buf[32];
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), (*this)(i, j));
                if (ec != std::errc{}) throw domain_error("matrix entry not representable");
                out.append(buf, p);
                out.push_back(j + 1 == cols_ ? '\n' : ',');
            }
        }
        return out;
    }

    static matrix from_csv_text(const std::string& text) {
        std::vector<double> entries;
        std::size_t rows = 0, cols = 0;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::size_t n_in_row = 0;
            const char* p = line.data();
            const char* end = line.data() + line.size();
            while (p < end) {
                double v = 0.0;
                auto [next, ec] = std::from_chars(p, end, v);
                if (ec != std::errc{})
                    throw domain_error("matrix CSV: unparsable entry in line: " + line);
                entries.push_back(v);
                ++n_in_row;
                p = next;
                if (p < end) {
                    if (*p != ',')
                        throw domain_error("matrix CSV: expected ',' separator");
                    ++p;
                }
            }
            if (rows == 0)
                cols = n_in_row;
            else if (n_in_row != cols)
                throw dimension_error("matrix CSV: ragged rows");
            ++rows;
        }
        if (rows == 0) throw domain_error("matrix CSV: empty input");
        return matrix(rows, cols, std::move(entries));
    }

    static matrix from_csv_file(const std::string& path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw domain_error("cannot open matrix CSV: " + path);
        std::ostringstream ss;
        ss << f.rdbuf();
        return from_csv_text(ss.str());
    }

    friend bool operator==(const matrix& a, const matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    void check_finite() const {
        for (double v : data_)
            if (!std::isfinite(v)) throw domain_error("matrix entries must be finite");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline void check_finite_vector(std::span<const double> v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw domain_error(std::string(what) + " must be finite");
}

} // namespace esplab

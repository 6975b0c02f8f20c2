#pragma once

#include <memory>

#include "bns/field.hpp"

namespace bns {

// ---------------------------------------------------------------------------
// Time-stamped field sequences. Fields are immutable once stored; snapshots
// are shared so decompositions can alias their parent run cheaply.
// ---------------------------------------------------------------------------

enum class ComponentTag { u, u_linear, w2, w3, custom };

inline const char* to_string(ComponentTag t) {
    switch (t) {
        case ComponentTag::u: return "u";
        case ComponentTag::u_linear: return "u_L";
        case ComponentTag::w2: return "w2";
        case ComponentTag::w3: return "w3";
        default: return "custom";
    }
}

struct Trajectory {
    std::vector<double> times;
    std::vector<std::shared_ptr<const VectorField>> fields;
    ComponentTag tag = ComponentTag::custom;

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }

    const Grid3& grid() const {
        if (fields.empty()) throw InvalidArgument("Trajectory: empty");
        return fields.front()->grid;
    }

    const VectorField& at(std::size_t i) const { return *fields.at(i); }

    void push(double t, VectorField&& f) {
        if (!times.empty() && t <= times.back())
            throw InvalidArgument("Trajectory: times must be strictly increasing");
        f.time = t;
        times.push_back(t);
        fields.push_back(std::make_shared<const VectorField>(std::move(f)));
    }

    void push_shared(double t, std::shared_ptr<const VectorField> f) {
        if (!times.empty() && t <= times.back())
            throw InvalidArgument("Trajectory: times must be strictly increasing");
        times.push_back(t);
        fields.push_back(std::move(f));
    }

    /// Index of the snapshot at time t (exact up to rounding slack).
    std::size_t index_of(double t, double tol = 1e-12) const {
        const double scale = std::max(1.0, std::abs(times.back()));
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - t) <= tol * scale) return i;
        throw MeshMismatch("Trajectory: no snapshot at requested time");
    }

    /// Index of the last snapshot with time <= t.
    std::size_t index_at_or_before(double t) const {
        if (empty() || times.front() > t)
            throw MeshMismatch("Trajectory: no snapshot at or before requested time");
        std::size_t best = 0;
        for (std::size_t i = 0; i < times.size(); ++i)
            if (times[i] <= t) best = i;
        return best;
    }

    bool same_mesh(const Trajectory& o, double tol = 1e-12) const {
        if (times.size() != o.times.size()) return false;
        for (std::size_t i = 0; i < times.size(); ++i)
            if (std::abs(times[i] - o.times[i]) > tol) return false;
        return true;
    }

    bool uniform_mesh(double tol = 1e-10) const {
        if (times.size() < 3) return true;
        const double h = times[1] - times[0];
        for (std::size_t i = 1; i + 1 < times.size(); ++i)
            if (std::abs((times[i + 1] - times[i]) - h) > tol * std::max(1.0, h))
                return false;
        return true;
    }
};

/// Snapshot selection for a run over [0, t_end] with a fixed step count.
struct SnapshotPolicy {
    enum class Kind { every_step, uniform, quadratic };
    Kind kind = Kind::uniform;
    int count = 64;  // target snapshot count (uniform/quadratic)
    int stride = 1;  // steps between snapshots (every_step ignores)

    static SnapshotPolicy every_step() { return {Kind::every_step, 0, 1}; }
    static SnapshotPolicy uniform_stride(int stride) {
        return {Kind::uniform, 0, std::max(1, stride)};
    }
    /// Times t_r proportional to r^2, matching the small-time weighting of
    /// the scaled energy functionals.
    static SnapshotPolicy quadratic(int count) {
        return {Kind::quadratic, std::max(2, count), 1};
    }

    /// Step indices (0..steps) at which snapshots are stored.
    std::vector<int> select(int steps) const {
        std::vector<int> idx;
        switch (kind) {
            case Kind::every_step:
                for (int i = 0; i <= steps; ++i) idx.push_back(i);
                break;
            case Kind::uniform:
                for (int i = 0; i <= steps; i += stride) idx.push_back(i);
                if (idx.back() != steps) idx.push_back(steps);
                break;
            case Kind::quadratic: {
                for (int r = 0; r < count; ++r) {
                    const double frac =
                        static_cast<double>(r) * r / ((count - 1.0) * (count - 1.0));
                    idx.push_back(static_cast<int>(std::lround(frac * steps)));
                }
                idx.push_back(steps);
                std::sort(idx.begin(), idx.end());
                idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
                break;
            }
        }
        return idx;
    }
};

}  // namespace bns

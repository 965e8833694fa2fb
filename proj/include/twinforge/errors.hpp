#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twinforge {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// twin store
struct DuplicateRecord : Error { using Error::Error; };
struct UnknownPt : Error { using Error::Error; };
struct BadFeatureVector : Error { using Error::Error; };
struct MissingRecord : Error { using Error::Error; };
struct CrossPtTemporal : Error { using Error::Error; };
struct NonPositiveDt : Error { using Error::Error; };
struct NoSuchSpatialRelation : Error { using Error::Error; };
struct BadRange : Error { using Error::Error; };
struct InsufficientData : Error { using Error::Error; };

struct MissingPtAt : Error {
    MissingPtAt(std::uint64_t tick, std::vector<std::uint32_t> pts)
        : Error("snapshot(" + std::to_string(tick) + "): " + std::to_string(pts.size()) +
                " pt(s) have no record at or before this tick"),
          tick(tick),
          uncovered_pts(std::move(pts)) {}
    std::uint64_t tick;
    std::vector<std::uint32_t> uncovered_pts;
};

// simulator
struct BadTopologyArgs : Error { using Error::Error; };
struct OutOfRetention : Error { using Error::Error; };

// rl agent
struct ShapeMismatch : Error { using Error::Error; };
struct InsufficientExperience : Error { using Error::Error; };
struct EmptyBatch : Error { using Error::Error; };

// metrics / logs
struct MissingLog : Error { using Error::Error; };

// config
struct UnknownKey : Error { using Error::Error; };
struct ConfigTypeError : Error { using Error::Error; };
struct MissingFile : Error { using Error::Error; };

}  // namespace twinforge

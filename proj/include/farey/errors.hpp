#pragma once

#include <stdexcept>
#include <string>

namespace farey {

// A request exceeded a configured capability cap (exact-mode level cap,
// materialization cap, lineage cap, hard level ceiling). Callers that run
// batches of checks treat this as "skip with reason", never as a failure.
struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File/stream failure while reading or writing results or checkpoints.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace farey

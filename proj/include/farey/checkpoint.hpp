#pragma once

#include <bit>
#include <cstdint>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "farey/errors.hpp"

namespace farey {

// One completed subtree task: the partial sum and its compensation term.
struct TaskPartial {
    double sum = 0.0;
    double compensation = 0.0;

    friend bool operator==(const TaskPartial&, const TaskPartial&) = default;
};

// IEEE-754 binary64, big-endian hex (most significant nibble first).
inline std::string encode_binary64_hex(double v) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 0; i < 16; ++i)
        out[i] = digits[(bits >> (60 - 4 * i)) & 0xF];
    return out;
}

inline double decode_binary64_hex(const std::string& hex) {
    if (hex.size() != 16) throw io_error("checkpoint: malformed binary64 hex field");
    std::uint64_t bits = 0;
    for (char c : hex) {
        bits <<= 4;
        if (c >= '0' && c <= '9')
            bits |= std::uint64_t(c - '0');
        else if (c >= 'a' && c <= 'f')
            bits |= std::uint64_t(c - 'a' + 10);
        else if (c >= 'A' && c <= 'F')
            bits |= std::uint64_t(c - 'A' + 10);
        else
            throw io_error("checkpoint: malformed binary64 hex field");
    }
    return std::bit_cast<double>(bits);
}

// Line-oriented sidecar of completed subtree tasks:
//   task_index<TAB>partial_value_hex<TAB>compensation_hex
// Task indices are assigned in a fixed order by the run (one contiguous
// block per fold), so a resumed run with the same configuration maps
// recorded partials back to the same tasks bit-exactly. A truncated final
// line, as left by an interrupted writer, is dropped on load.
class CheckpointLog {
public:
    CheckpointLog(std::string path, bool resume) : path_(std::move(path)) {
        if (resume) load();
        out_.open(path_, resume ? std::ios::app : std::ios::trunc);
        if (!out_) throw io_error("checkpoint: cannot open " + path_ + " for writing");
    }

    std::optional<TaskPartial> lookup(std::uint64_t task_index) const {
        std::lock_guard lock(mutex_);
        const auto it = done_.find(task_index);
        if (it == done_.end()) return std::nullopt;
        return it->second;
    }

    void record(std::uint64_t task_index, const TaskPartial& partial) {
        std::lock_guard lock(mutex_);
        out_ << task_index << '\t' << encode_binary64_hex(partial.sum) << '\t'
             << encode_binary64_hex(partial.compensation) << '\n';
        out_.flush();
        if (!out_) throw io_error("checkpoint: write to " + path_ + " failed");
        done_.emplace(task_index, partial);
    }

    // Reserves a contiguous block of task indices for the next fold.
    std::uint64_t reserve_block(std::uint64_t task_count) {
        std::lock_guard lock(mutex_);
        const std::uint64_t base = next_base_;
        next_base_ += task_count;
        return base;
    }

    std::size_t completed_count() const {
        std::lock_guard lock(mutex_);
        return done_.size();
    }

private:
    void load() {
        std::ifstream in(path_);
        if (!in) return;  // nothing recorded yet
        std::string line;
        while (std::getline(in, line)) {
            const auto tab1 = line.find('\t');
            const auto tab2 = line.find('\t', tab1 + 1);
            if (tab1 == std::string::npos || tab2 == std::string::npos) continue;
            try {
                const std::uint64_t idx = std::stoull(line.substr(0, tab1));
                TaskPartial p;
                p.sum = decode_binary64_hex(line.substr(tab1 + 1, tab2 - tab1 - 1));
                p.compensation = decode_binary64_hex(line.substr(tab2 + 1));
                done_[idx] = p;
            } catch (const std::exception&) {
                continue;  // interrupted write left a partial record
            }
        }
    }

    std::string path_;
    std::ofstream out_;
    mutable std::mutex mutex_;
    std::unordered_map<std::uint64_t, TaskPartial> done_;
    std::uint64_t next_base_ = 0;
};

}  // namespace farey

// Copyright 2026 The pipemap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pipemap/sim.h"

#include <functional>
#include <queue>
#include <string>
#include <vector>

#include "pipemap/error.h"

namespace pipemap {
namespace {

enum class EventKind { kTransferDone, kComputeDone };

struct Event {
  double time;
  long seq;
  EventKind kind;
  int where;    // channel for transfers, processor slot for computations
  int dataset;  // 1-based
};

struct Later {
  bool operator()(const Event& a, const Event& b) const {
    if (a.time != b.time) return a.time > b.time;
    return a.seq > b.seq;
  }
};

// Channel c links node c to node c + 1, where node 0 is the outside-world
// source, nodes 1..m the interval processors and node m + 1 the sink.
struct Channel {
  double duration = 0.0;
  int ready_dataset = 0;  // data set the sender holds, 0 if none
  bool receiver_waiting = false;
};

class PipelineSim {
 public:
  PipelineSim(const PipelineApp& app, const Platform& platform,
              const IntervalMapping& mapping, int num_datasets)
      : m_(mapping.size()), total_(num_datasets) {
    channels_.resize(m_ + 1);
    for (int c = 0; c <= m_; ++c) {
      const int boundary = c == 0 ? 0 : mapping.intervals[c - 1].last;
      channels_[c].duration = app.delta[boundary] / platform.bandwidth;
    }
    compute_.resize(m_ + 1);
    for (int j = 1; j <= m_; ++j) {
      compute_[j] = IntervalWork(app, mapping.intervals[j - 1]) /
                    platform.speeds[mapping.alloc[j - 1] - 1];
    }
  }

  std::vector<double> Run() {
    completions_.assign(total_, 0.0);
    channels_[0].ready_dataset = 1;
    for (int c = 0; c <= m_; ++c) channels_[c].receiver_waiting = true;
    for (int c = 0; c <= m_; ++c) TryStart(c, 0.0);
    while (!queue_.empty()) {
      const Event ev = queue_.top();
      queue_.pop();
      if (ev.kind == EventKind::kTransferDone) {
        OnTransferDone(ev);
      } else {
        channels_[ev.where].ready_dataset = ev.dataset;
        TryStart(ev.where, ev.time);
      }
    }
    return completions_;
  }

  int events() const { return static_cast<int>(seq_); }

 private:
  void Push(double time, EventKind kind, int where, int dataset) {
    queue_.push(Event{time, seq_++, kind, where, dataset});
  }

  void TryStart(int c, double now) {
    Channel& ch = channels_[c];
    if (ch.ready_dataset == 0 || !ch.receiver_waiting) return;
    const int k = ch.ready_dataset;
    ch.ready_dataset = 0;
    ch.receiver_waiting = false;
    Push(now + ch.duration, EventKind::kTransferDone, c, k);
  }

  void OnTransferDone(const Event& ev) {
    const int c = ev.where;
    const int k = ev.dataset;
    // Sender side.
    if (c == 0) {
      if (k < total_) channels_[0].ready_dataset = k + 1;
      TryStart(0, ev.time);
    } else if (k < total_) {
      channels_[c - 1].receiver_waiting = true;
      TryStart(c - 1, ev.time);
    }
    // Receiver side.
    if (c == m_) {
      completions_[k - 1] = ev.time;
      channels_[m_].receiver_waiting = true;
      TryStart(m_, ev.time);
    } else {
      Push(ev.time + compute_[c + 1], EventKind::kComputeDone, c + 1, k);
    }
  }

  int m_;
  int total_;
  long seq_ = 0;
  std::vector<Channel> channels_;
  std::vector<double> compute_;
  std::vector<double> completions_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

}  // namespace

SimReport Simulate(const PipelineApp& app, const Platform& platform,
                   const IntervalMapping& mapping, int num_datasets) {
  Validate(app, platform, mapping);
  const int m = mapping.size();
  if (num_datasets < 2 * m + 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "need at least 2m + 2 = " + std::to_string(2 * m + 2) +
                    " data sets, got " + std::to_string(num_datasets));
  }
  PipelineSim sim(app, platform, mapping, num_datasets);
  SimReport report;
  report.completion_times = sim.Run();
  report.trace_length = sim.events();
  const auto& done = report.completion_times;
  report.measured_latency = done.front();
  report.measured_period = (done[num_datasets - 1] - done[num_datasets - 1 - m]) /
                           static_cast<double>(m);
  return report;
}

}  // namespace pipemap

#include "melro/common.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace melro {

namespace {

uint64_t splitmix64(uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& s : s_) s = splitmix64(x);
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

int64_t Rng::uniform_int(int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(next_u64() % span);
}

double Rng::normal() {
  // Box-Muller; u1 kept away from zero so log stays finite.
  double u1 = uniform();
  if (u1 < 1e-300) u1 = 1e-300;
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::normal(double mean, double stddev) {
  return mean + stddev * normal();
}

uint64_t Rng::mix(uint64_t seed, uint64_t stream) {
  uint64_t x = seed ^ (0x632be59bd9b4e019ULL * (stream + 1));
  return splitmix64(x);
}

Rng Rng::fork(uint64_t stream) const {
  Rng copy = *this;
  uint64_t h = copy.next_u64();
  return Rng(mix(h, stream));
}

namespace {

class ThreadPool {
 public:
  ThreadPool() = default;
  ~ThreadPool() { stop(); }

  void resize(int n) {
    std::lock_guard<std::mutex> outer(api_mutex_);
    stop();
    n = std::max(1, n);
    target_ = n;
    if (n == 1) return;
    {
      std::lock_guard<std::mutex> lk(mutex_);
      shutdown_ = false;
    }
    for (int i = 1; i < n; ++i) {
      workers_.emplace_back([this, i] { worker_loop(i); });
    }
  }

  int size() const { return target_; }

  void run(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
    if (n <= 0) return;
    const int threads = std::min<int64_t>(target_, n);
    if (threads <= 1 || workers_.empty()) {
      fn(0, n);
      return;
    }
    std::unique_lock<std::mutex> lk(mutex_);
    job_fn_ = &fn;
    job_n_ = n;
    job_threads_ = threads;
    pending_ = threads - 1;
    ++job_id_;
    cv_.notify_all();
    lk.unlock();

    run_slice(0);

    lk.lock();
    done_cv_.wait(lk, [this] { return pending_ == 0; });
    job_fn_ = nullptr;
  }

 private:
  void run_slice(int slice) {
    const int64_t chunk = (job_n_ + job_threads_ - 1) / job_threads_;
    const int64_t begin = slice * chunk;
    const int64_t end = std::min<int64_t>(job_n_, begin + chunk);
    if (begin < end) (*job_fn_)(begin, end);
  }

  void worker_loop(int index) {
    uint64_t seen = 0;
    for (;;) {
      std::unique_lock<std::mutex> lk(mutex_);
      cv_.wait(lk, [&] { return shutdown_ || job_id_ != seen; });
      if (shutdown_) return;
      seen = job_id_;
      if (index >= job_threads_) {
        if (--pending_ == 0) done_cv_.notify_one();
        continue;
      }
      lk.unlock();
      run_slice(index);
      lk.lock();
      if (--pending_ == 0) done_cv_.notify_one();
    }
  }

  void stop() {
    {
      std::lock_guard<std::mutex> lk(mutex_);
      shutdown_ = true;
      ++job_id_;
      cv_.notify_all();
    }
    for (auto& w : workers_) w.join();
    workers_.clear();
  }

  std::mutex api_mutex_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::condition_variable done_cv_;
  std::vector<std::thread> workers_;
  const std::function<void(int64_t, int64_t)>* job_fn_ = nullptr;
  int64_t job_n_ = 0;
  int job_threads_ = 1;
  int pending_ = 0;
  uint64_t job_id_ = 0;
  bool shutdown_ = false;
  int target_ = 1;
};

ThreadPool& pool() {
  static ThreadPool p;
  return p;
}

std::atomic<int> g_threads{0};

}  // namespace

void set_num_threads(int n) {
  n = std::max(1, n);
  g_threads.store(n);
  pool().resize(n);
}

int num_threads() {
  int n = g_threads.load();
  if (n == 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    set_num_threads(n);
  }
  return n;
}

void parallel_for(int64_t n, const std::function<void(int64_t, int64_t)>& fn) {
  num_threads();  // ensure pool initialized
  pool().run(n, fn);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  out << text;
}

}  // namespace melro

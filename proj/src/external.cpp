// Copyright 2026 The racecars Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>

#include "racecars/errors.hpp"
#include "racecars/objectives.hpp"

namespace racecars {

// The adapter's stdin and stdout are both bound to one end of a Unix socket
// pair. Writes use MSG_NOSIGNAL so a dead adapter surfaces as an error
// instead of SIGPIPE.
SubprocessObjective::SubprocessObjective(const std::string& command, std::size_t n,
                                         double timeout_seconds)
    : n_(n), timeout_seconds_(timeout_seconds) {
  if (n == 0) throw PreconditionError("external objective needs n >= 1");
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, fds) != 0) {
    throw ObjectiveFailure(fmt::format("socketpair failed: {}", std::strerror(errno)));
  }
  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fds[0]);
    ::close(fds[1]);
    throw ObjectiveFailure(fmt::format("fork failed: {}", std::strerror(errno)));
  }
  if (pid == 0) {
    // Own process group, so shutdown also reaches processes the shell forks.
    ::setpgid(0, 0);
    ::dup2(fds[1], STDIN_FILENO);
    ::dup2(fds[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(fds[1]);
  pid_ = pid;
  to_child_ = fds[0];
  from_child_ = fds[0];

  try {
    write_line(fmt::format("DIM {}\n", n_));
    const std::string reply = read_line();
    if (reply != "OK") {
      throw ObjectiveFailure(fmt::format("adapter handshake expected 'OK', got '{}'", reply));
    }
  } catch (...) {
    shutdown();
    throw;
  }
}

SubprocessObjective::~SubprocessObjective() { shutdown(); }

void SubprocessObjective::shutdown() noexcept {
  if (to_child_ >= 0) {
    ::close(to_child_);
    to_child_ = from_child_ = -1;
  }
  if (pid_ > 0) {
    // Closing the socket is the adapter's signal to exit; give it a moment.
    int status = 0;
    bool reaped = false;
    for (int i = 0; i < 50 && !reaped; ++i) {
      reaped = ::waitpid(pid_, &status, WNOHANG) != 0;
      if (!reaped) std::this_thread::sleep_for(std::chrono::milliseconds(10));
    }
    ::kill(-pid_, SIGKILL);
    if (!reaped) ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

void SubprocessObjective::write_line(const std::string& line) {
  std::size_t sent = 0;
  while (sent < line.size()) {
    const ssize_t k = ::send(to_child_, line.data() + sent, line.size() - sent, MSG_NOSIGNAL);
    if (k < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw ObjectiveFailure(fmt::format("writing to adapter failed: {}", std::strerror(errno)));
    }
    sent += static_cast<std::size_t>(k);
  }
}

std::string SubprocessObjective::read_line() {
  using clock = std::chrono::steady_clock;
  const auto deadline =
      clock::now() + std::chrono::duration_cast<clock::duration>(
                         std::chrono::duration<double>(timeout_seconds_));
  for (;;) {
    if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - clock::now());
    if (left.count() <= 0) {
      broken_ = true;
      throw ObjectiveFailure(fmt::format("adapter did not reply within {} s", timeout_seconds_));
    }
    pollfd p{from_child_, POLLIN, 0};
    const int ready = ::poll(&p, 1, static_cast<int>(left.count()));
    if (ready < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw ObjectiveFailure(fmt::format("poll failed: {}", std::strerror(errno)));
    }
    if (ready == 0) continue;
    char chunk[4096];
    const ssize_t k = ::recv(from_child_, chunk, sizeof chunk, 0);
    if (k < 0) {
      if (errno == EINTR) continue;
      broken_ = true;
      throw ObjectiveFailure(fmt::format("reading from adapter failed: {}", std::strerror(errno)));
    }
    if (k == 0) {
      broken_ = true;
      throw ObjectiveFailure("adapter closed its output");
    }
    buffer_.append(chunk, static_cast<std::size_t>(k));
  }
}

double SubprocessObjective::evaluate(std::span<const double> x) {
  if (broken_) throw ObjectiveFailure("adapter is no longer usable");
  if (x.size() != n_) {
    throw PreconditionError(fmt::format("expected a point of dimension {}, got {}", n_, x.size()));
  }
  write_line(format_request(x));
  return parse_reply(read_line());
}

struct HttpObjective::Client {
  httplib::Client http;
  explicit Client(const std::string& origin) : http(origin) {}
};

HttpObjective::HttpObjective(const std::string& url, std::size_t n, double timeout_seconds) : n_(n) {
  if (n == 0) throw PreconditionError("external objective needs n >= 1");
  constexpr std::string_view scheme = "http://";
  if (url.rfind(scheme, 0) != 0) {
    throw PreconditionError(fmt::format("unsupported objective URL '{}'", url));
  }
  const std::size_t slash = url.find('/', scheme.size());
  const std::string origin = slash == std::string::npos ? url : url.substr(0, slash);
  path_ = slash == std::string::npos ? "/" : url.substr(slash);
  client_ = std::make_unique<Client>(origin);
  const auto whole = static_cast<time_t>(timeout_seconds);
  const auto micros = static_cast<time_t>((timeout_seconds - static_cast<double>(whole)) * 1e6);
  client_->http.set_connection_timeout(whole, micros);
  client_->http.set_read_timeout(whole, micros);
  client_->http.set_write_timeout(whole, micros);
}

HttpObjective::~HttpObjective() = default;

double HttpObjective::evaluate(std::span<const double> x) {
  if (x.size() != n_) {
    throw PreconditionError(fmt::format("expected a point of dimension {}, got {}", n_, x.size()));
  }
  auto res = client_->http.Post(path_, format_request(x), "text/plain");
  if (!res) {
    throw ObjectiveFailure(
        fmt::format("HTTP request failed: {}", httplib::to_string(res.error())));
  }
  if (res->status != 200) {
    throw EvaluationError(fmt::format("objective endpoint returned status {}", res->status));
  }
  return parse_reply(res->body);
}

std::unique_ptr<BlackBox> external_objective(const std::string& command_or_endpoint, std::size_t n,
                                             double timeout_seconds) {
  if (command_or_endpoint.rfind("http://", 0) == 0 || command_or_endpoint.rfind("https://", 0) == 0) {
    return std::make_unique<HttpObjective>(command_or_endpoint, n, timeout_seconds);
  }
  return std::make_unique<SubprocessObjective>(command_or_endpoint, n, timeout_seconds);
}

}  // namespace racecars

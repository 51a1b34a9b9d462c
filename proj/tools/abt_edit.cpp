// Copyright 2026 The abtedit Authors
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

#include <iostream>
#include <string>
#include <vector>

#include "abtedit/cli.hpp"
#include "abtedit/http.hpp"

namespace {

int serve(int port, std::ostream& out, std::ostream& err) {
  abtedit::service::Service svc;
  httplib::Server server;
  abtedit::service::bind_routes(server, svc);
  out << "listening on 127.0.0.1:" << port << std::endl;
  if (!server.listen("127.0.0.1", port)) {
    err << "error: cannot listen on port " << port << "\n";
    return abtedit::cli::kUsage;
  }
  return abtedit::cli::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return abtedit::cli::main(args, std::cout, std::cerr, serve);
}

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
#pragma once

// Binds a Service to an httplib server.

#include <httplib.h>

#include "abtedit/service.hpp"

namespace abtedit::service {

inline void bind_routes(httplib::Server& server, Service& svc) {
  auto forward = [&svc](const httplib::Request& req, httplib::Response& res) {
    Response r = svc.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  server.Get(R"(/.*)", forward);
  server.Post(R"(/.*)", forward);
  server.Put(R"(/.*)", forward);
  server.Delete(R"(/.*)", forward);
}

}  // namespace abtedit::service

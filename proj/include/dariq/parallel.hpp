/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace dariq {

/// Splits [0, n) into at most `jobs` contiguous chunks and runs
/// fn(chunk_index, begin, end) for each, on worker threads when jobs > 1.
/// Chunk boundaries depend only on n and jobs, so callers that merge chunk
/// results in index order get the same answer for any thread schedule. The
/// first exception thrown by a worker is rethrown on the calling thread.
template <class Fn>
std::size_t for_each_chunk(std::size_t n, unsigned jobs, Fn&& fn) {
    const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(jobs == 0 ? 1 : jobs, n));
    const std::size_t step = (n + chunks - 1) / chunks;
    if (chunks == 1) {
        fn(std::size_t{0}, std::size_t{0}, n);
        return 1;
    }
    std::vector<std::exception_ptr> errors(chunks);
    {
        std::vector<std::jthread> workers;
        workers.reserve(chunks);
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t begin = std::min(n, c * step);
            const std::size_t end = std::min(n, begin + step);
            workers.emplace_back([&, c, begin, end] {
                try {
                    fn(c, begin, end);
                } catch (...) {
                    errors[c] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return chunks;
}

}  // namespace dariq

// Copyright 2026 The sptel Authors
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

#include "sptel/error_spec.hpp"

#include <charconv>
#include <stdexcept>
#include <string>

namespace sptel {

namespace {

std::vector<std::string_view> split_commas(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto c = s.find(',');
        out.push_back(s.substr(0, c));
        if (c == std::string_view::npos) break;
        s.remove_prefix(c + 1);
    }
    return out;
}

template <typename T>
T parse_number(std::string_view s, std::string_view whole) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument("bad number '" + std::string(s) + "' in error spec '" + std::string(whole) + "'");
    return v;
}

std::string num(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

}  // namespace

ErrorSpec parse_error_spec(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("error spec '" + std::string(text) + "' lacks a ':'");
    const auto kind = text.substr(0, colon);
    const auto args = split_commas(text.substr(colon + 1));
    if (kind == "zz") {
        if (args.size() != 3) throw std::invalid_argument("zz error needs a,b,epsilon");
        return ZZCrosstalk{parse_number<int>(args[0], text), parse_number<int>(args[1], text),
                           parse_number<double>(args[2], text)};
    }
    if (kind == "x1q") {
        if (args.size() != 3 || args[1].size() != 1) throw std::invalid_argument("x1q error needs vertex,axis,theta");
        const Letter axis = letter_from_char(args[1][0]);
        if (axis == Letter::I) throw std::invalid_argument("x1q axis must be X, Y or Z");
        return SingleQubitError{parse_number<int>(args[0], text), axis, parse_number<double>(args[2], text)};
    }
    if (kind == "depol2q") {
        if (args.size() != 1) throw std::invalid_argument("depol2q error needs p");
        const double p = parse_number<double>(args[0], text);
        if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing probability outside [0,1]");
        return Depolarizing2q{p};
    }
    throw std::invalid_argument("unknown error kind '" + std::string(kind) + "'");
}

std::string to_string(const ErrorSpec& e) {
    if (const auto* zz = std::get_if<ZZCrosstalk>(&e))
        return "zz:" + std::to_string(zz->a) + "," + std::to_string(zz->b) + "," + num(zz->epsilon);
    if (const auto* sq = std::get_if<SingleQubitError>(&e))
        return "x1q:" + std::to_string(sq->vertex) + "," + letter_char(sq->axis) + "," + num(sq->theta);
    return "depol2q:" + num(std::get<Depolarizing2q>(e).p);
}

double error_strength(const ErrorSpec& e) {
    return std::visit(
        [](const auto& x) -> double {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZZCrosstalk>)
                return x.epsilon;
            else if constexpr (std::is_same_v<T, SingleQubitError>)
                return x.theta;
            else
                return x.p;
        },
        e);
}

ErrorSpec with_strength(ErrorSpec e, double value) {
    std::visit(
        [value](auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, ZZCrosstalk>)
                x.epsilon = value;
            else if constexpr (std::is_same_v<T, SingleQubitError>)
                x.theta = value;
            else
                x.p = value;
        },
        e);
    return e;
}

}  // namespace sptel

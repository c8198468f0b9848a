// SPDX-License-Identifier: Apache-2.0

#ifndef DOT_CORE_OVERLOADED_HPP
#define DOT_CORE_OVERLOADED_HPP

namespace dot {

template <class... Fs>
struct overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

}  // namespace dot

#endif

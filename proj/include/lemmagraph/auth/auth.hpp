// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "lemmagraph/auth/roles.hpp"
#include "lemmagraph/store/store.hpp"

namespace lemmagraph::auth {

/// Argon2id cost parameters. `Interactive` is the production setting;
/// `Minimal` exists for test suites that register many users.
enum class HashStrength { Interactive, Minimal };

std::string hash_password(const std::string& password, HashStrength strength);
bool verify_password(const std::string& digest, const std::string& password);

/// Roles assigned at registration.
inline constexpr RoleSet kDefaultRoles{Role::Querier};

/// Whether a registered user holds `permission`. Every registered user may
/// view the corpus, whatever their roles.
bool authorize(const store::User& user, Permission permission);

/// Throws Error(Authorization) unless `user` holds `permission`.
void require(const store::User& user, Permission permission);

using Clock = std::function<std::chrono::system_clock::time_point()>;

struct AuthOptions {
  std::chrono::seconds idle_timeout{3600};
  HashStrength strength = HashStrength::Interactive;
  RoleSet default_roles = kDefaultRoles;
  Clock clock = [] { return std::chrono::system_clock::now(); };
};

/// Accounts and sessions. Sessions live in memory; accounts live in the store.
class Authenticator {
 public:
  Authenticator(store::Store& store, AuthOptions options = {});

  store::UserId register_user(const std::string& username, const std::string& email,
                              const std::string& password);

  /// A fresh session token, or nullopt. Unknown users and wrong passwords are
  /// not distinguished.
  std::optional<std::string> authenticate(const std::string& username,
                                          const std::string& password);

  /// The user behind a live session; refreshes the idle timer.
  std::optional<store::User> session_user(const std::string& token);
  void logout(const std::string& token);

  /// Replaces the target's role set. The actor needs ManageAccess.
  RoleSet grant_roles(const store::User& actor, store::UserId target, RoleSet roles);

  /// Creates the bootstrap administrator when no user of that name exists.
  store::UserId ensure_admin(const std::string& username, const std::string& email,
                             const std::string& password);

  const AuthOptions& options() const { return options_; }

 private:
  struct Session {
    store::UserId user;
    std::chrono::system_clock::time_point last_seen;
  };

  store::Store& store_;
  AuthOptions options_;
  std::string dummy_digest_;
  std::mutex sessions_mutex_;
  std::unordered_map<std::string, Session> sessions_;
};

/// Registration as a free function over a store.
store::UserId register_user(store::Store& store, const std::string& username,
                            const std::string& email, const std::string& password,
                            HashStrength strength = HashStrength::Interactive,
                            RoleSet roles = kDefaultRoles);

}  // namespace lemmagraph::auth

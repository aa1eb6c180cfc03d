// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/auth/auth.hpp"

#include <sodium.h>

#include <array>
#include <stdexcept>

#include "lemmagraph/error.hpp"

namespace lemmagraph::auth {

namespace {

void ensure_sodium() {
  static const int rc = sodium_init();
  if (rc < 0) throw std::runtime_error("libsodium initialisation failed");
}

std::string random_token() {
  ensure_sodium();
  std::array<unsigned char, 32> bytes{};
  randombytes_buf(bytes.data(), bytes.size());
  std::array<char, 65> hex{};
  sodium_bin2hex(hex.data(), hex.size(), bytes.data(), bytes.size());
  return std::string(hex.data(), 64);
}

}  // namespace

std::string hash_password(const std::string& password, HashStrength strength) {
  ensure_sodium();
  unsigned long long ops = crypto_pwhash_OPSLIMIT_INTERACTIVE;
  std::size_t mem = crypto_pwhash_MEMLIMIT_INTERACTIVE;
  if (strength == HashStrength::Minimal) {
    ops = crypto_pwhash_OPSLIMIT_MIN;
    mem = crypto_pwhash_MEMLIMIT_MIN;
  }
  std::array<char, crypto_pwhash_STRBYTES> out{};
  if (crypto_pwhash_str(out.data(), password.data(), password.size(), ops, mem) != 0) {
    throw std::runtime_error("password hashing ran out of memory");
  }
  return std::string(out.data());
}

bool verify_password(const std::string& digest, const std::string& password) {
  ensure_sodium();
  return crypto_pwhash_str_verify(digest.c_str(), password.data(), password.size()) == 0;
}

bool authorize(const store::User& user, Permission permission) {
  if (permission == Permission::ViewCorpus) return true;
  return check_permission(user.roles, permission);
}

void require(const store::User& user, Permission permission) {
  if (!authorize(user, permission)) {
    throw Error(ErrorCode::Authorization,
                "user '" + user.username + "' lacks the " + std::string(to_string(permission)) +
                    " permission");
  }
}

store::UserId register_user(store::Store& store, const std::string& username,
                            const std::string& email, const std::string& password,
                            HashStrength strength, RoleSet roles) {
  if (username.empty()) throw Error(ErrorCode::Validation, "username must be non-empty");
  if (password.empty()) throw Error(ErrorCode::Validation, "password must be non-empty");
  auto digest = hash_password(password, strength);
  return store.transact([&](store::Transaction& tx) {
    return tx.insert_user(username, email, digest, roles);
  });
}

Authenticator::Authenticator(store::Store& store, AuthOptions options)
    : store_(store), options_(std::move(options)) {
  dummy_digest_ = hash_password(random_token(), options_.strength);
}

store::UserId Authenticator::register_user(const std::string& username, const std::string& email,
                                           const std::string& password) {
  return auth::register_user(store_, username, email, password, options_.strength,
                             options_.default_roles);
}

std::optional<std::string> Authenticator::authenticate(const std::string& username,
                                                       const std::string& password) {
  auto user = store_.read([&](const store::StoreView& v) { return v.user_by_name(username); });
  // Verify against a throwaway digest for unknown users so both failures cost the same.
  bool ok = verify_password(user ? user->password_hash : dummy_digest_, password) && user.has_value();
  if (!ok) return std::nullopt;
  auto token = random_token();
  std::lock_guard lock(sessions_mutex_);
  sessions_[token] = Session{user->id, options_.clock()};
  return token;
}

std::optional<store::User> Authenticator::session_user(const std::string& token) {
  store::UserId id;
  {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(token);
    if (it == sessions_.end()) return std::nullopt;
    auto now = options_.clock();
    if (now - it->second.last_seen > options_.idle_timeout) {
      sessions_.erase(it);
      return std::nullopt;
    }
    it->second.last_seen = now;
    id = it->second.user;
  }
  return store_.read([&](const store::StoreView& v) { return v.user(id); });
}

void Authenticator::logout(const std::string& token) {
  std::lock_guard lock(sessions_mutex_);
  sessions_.erase(token);
}

RoleSet Authenticator::grant_roles(const store::User& actor, store::UserId target, RoleSet roles) {
  require(actor, Permission::ManageAccess);
  auto at = std::chrono::duration_cast<std::chrono::seconds>(
                options_.clock().time_since_epoch())
                .count();
  store_.transact([&](store::Transaction& tx) {
    if (!tx.user(target)) throw Error(ErrorCode::NotFound, "no such user");
    tx.set_roles(target, roles);
    tx.append_audit(actor.id, target, roles, at);
  });
  return roles;
}

store::UserId Authenticator::ensure_admin(const std::string& username, const std::string& email,
                                          const std::string& password) {
  if (auto existing =
          store_.read([&](const store::StoreView& v) { return v.user_by_name(username); })) {
    return existing->id;
  }
  return auth::register_user(store_, username, email, password, options_.strength,
                             RoleSet{Role::Admin});
}

}  // namespace lemmagraph::auth

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lemmagraph::auth {

enum class Role : std::uint8_t { Querier, Annotator, Curator, Admin };

enum class Permission : std::uint8_t {
  Query,
  Annotate,
  Curate,
  CreateOntology,
  UploadCorpus,
  ManageAccess,
  ViewCorpus,
};

inline constexpr Role kAllRoles[] = {Role::Querier, Role::Annotator, Role::Curator,
                                     Role::Admin};
inline constexpr Permission kAllPermissions[] = {
    Permission::Query,        Permission::Annotate,     Permission::Curate,
    Permission::CreateOntology, Permission::UploadCorpus, Permission::ManageAccess,
    Permission::ViewCorpus};

std::string_view to_string(Role role);
std::string_view to_string(Permission permission);
std::optional<Role> role_from_string(std::string_view name);

/// Small value-type set of roles, stored as a bitmask.
class RoleSet {
 public:
  constexpr RoleSet() = default;
  constexpr RoleSet(std::initializer_list<Role> roles) {
    for (Role r : roles) insert(r);
  }

  static constexpr RoleSet from_bits(std::uint8_t bits) {
    RoleSet s;
    s.bits_ = bits & 0x0F;
    return s;
  }

  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Role r) const { return (bits_ & mask(r)) != 0; }
  constexpr void insert(Role r) { bits_ |= mask(r); }
  constexpr void erase(Role r) { bits_ &= static_cast<std::uint8_t>(~mask(r)); }

  std::vector<Role> roles() const;
  std::vector<std::string> names() const;

  constexpr bool operator==(const RoleSet&) const = default;

 private:
  static constexpr std::uint8_t mask(Role r) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(r));
  }
  std::uint8_t bits_ = 0;
};

/// The role/permission matrix, taken as the union over the roles held.
/// ViewCorpus is granted to any non-empty role set; use authorize() for a
/// registered user, which grants ViewCorpus unconditionally.
bool check_permission(RoleSet roles, Permission permission);

}  // namespace lemmagraph::auth

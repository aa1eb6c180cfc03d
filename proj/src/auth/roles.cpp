// SPDX-License-Identifier: Apache-2.0
#include "lemmagraph/auth/roles.hpp"

namespace lemmagraph::auth {

std::string_view to_string(Role role) {
  switch (role) {
    case Role::Querier: return "querier";
    case Role::Annotator: return "annotator";
    case Role::Curator: return "curator";
    case Role::Admin: return "admin";
  }
  return "?";
}

std::string_view to_string(Permission permission) {
  switch (permission) {
    case Permission::Query: return "query";
    case Permission::Annotate: return "annotate";
    case Permission::Curate: return "curate";
    case Permission::CreateOntology: return "create_ontology";
    case Permission::UploadCorpus: return "upload_corpus";
    case Permission::ManageAccess: return "manage_access";
    case Permission::ViewCorpus: return "view_corpus";
  }
  return "?";
}

std::optional<Role> role_from_string(std::string_view name) {
  for (Role r : kAllRoles) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::vector<Role> RoleSet::roles() const {
  std::vector<Role> out;
  for (Role r : kAllRoles) {
    if (contains(r)) out.push_back(r);
  }
  return out;
}

std::vector<std::string> RoleSet::names() const {
  std::vector<std::string> out;
  for (Role r : roles()) out.emplace_back(to_string(r));
  return out;
}

namespace {

bool role_grants(Role role, Permission p) {
  switch (role) {
    case Role::Querier:
      return p == Permission::Query;
    case Role::Annotator:
      return p == Permission::Query || p == Permission::Annotate;
    case Role::Curator:
      return p == Permission::Query || p == Permission::Annotate ||
             p == Permission::Curate;
    case Role::Admin:
      return true;
  }
  return false;
}

}  // namespace

bool check_permission(RoleSet roles, Permission permission) {
  if (permission == Permission::ViewCorpus) return !roles.empty();
  for (Role r : roles.roles()) {
    if (role_grants(r, permission)) return true;
  }
  return false;
}

}  // namespace lemmagraph::auth

// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include "lemmagraph/auth/roles.hpp"

using namespace lemmagraph::auth;

namespace {

// Role/permission table, written out cell by cell.
struct Cell {
  Role role;
  Permission permission;
  bool allowed;
};

const Cell kTable[] = {
    {Role::Querier, Permission::Query, true},
    {Role::Querier, Permission::Annotate, false},
    {Role::Querier, Permission::Curate, false},
    {Role::Querier, Permission::CreateOntology, false},
    {Role::Querier, Permission::UploadCorpus, false},
    {Role::Querier, Permission::ManageAccess, false},
    {Role::Annotator, Permission::Query, true},
    {Role::Annotator, Permission::Annotate, true},
    {Role::Annotator, Permission::Curate, false},
    {Role::Annotator, Permission::CreateOntology, false},
    {Role::Annotator, Permission::UploadCorpus, false},
    {Role::Annotator, Permission::ManageAccess, false},
    {Role::Curator, Permission::Query, true},
    {Role::Curator, Permission::Annotate, true},
    {Role::Curator, Permission::Curate, true},
    {Role::Curator, Permission::CreateOntology, false},
    {Role::Curator, Permission::UploadCorpus, false},
    {Role::Curator, Permission::ManageAccess, false},
    {Role::Admin, Permission::Query, true},
    {Role::Admin, Permission::Annotate, true},
    {Role::Admin, Permission::Curate, true},
    {Role::Admin, Permission::CreateOntology, true},
    {Role::Admin, Permission::UploadCorpus, true},
    {Role::Admin, Permission::ManageAccess, true},
};

}  // namespace

TEST(Roles, SingleRoleTableHasTwentyFourCells) {
  int checked = 0;
  for (const auto& cell : kTable) {
    EXPECT_EQ(check_permission(RoleSet{cell.role}, cell.permission), cell.allowed)
        << to_string(cell.role) << " / " << to_string(cell.permission);
    ++checked;
  }
  EXPECT_EQ(checked, 24);
}

TEST(Roles, SpecExamples) {
  EXPECT_FALSE(check_permission({Role::Annotator}, Permission::Curate));
  EXPECT_TRUE(check_permission({Role::Admin}, Permission::ManageAccess));
  EXPECT_TRUE(check_permission({Role::Querier, Role::Curator}, Permission::Annotate));
}

TEST(Roles, ViewCorpusForAnyNonEmptySet) {
  EXPECT_FALSE(check_permission(RoleSet{}, Permission::ViewCorpus));
  for (unsigned bits = 1; bits < 16; ++bits) {
    EXPECT_TRUE(check_permission(RoleSet::from_bits(bits), Permission::ViewCorpus));
  }
}

TEST(Roles, UnionOverEverySubset) {
  for (unsigned bits = 0; bits < 16; ++bits) {
    RoleSet set = RoleSet::from_bits(bits);
    for (auto p : kAllPermissions) {
      if (p == Permission::ViewCorpus) continue;
      bool expected = false;
      for (const auto& cell : kTable) {
        if (cell.permission == p && set.contains(cell.role) && cell.allowed) expected = true;
      }
      EXPECT_EQ(check_permission(set, p), expected) << bits << " " << to_string(p);
    }
  }
}

TEST(Roles, AddingARoleNeverRemovesAPermission) {
  for (unsigned bits = 0; bits < 16; ++bits) {
    for (auto extra : kAllRoles) {
      RoleSet base = RoleSet::from_bits(bits);
      RoleSet more = base;
      more.insert(extra);
      for (auto p : kAllPermissions) {
        EXPECT_TRUE(!check_permission(base, p) || check_permission(more, p));
      }
    }
  }
}

TEST(Roles, NamesRoundTrip) {
  for (auto r : kAllRoles) EXPECT_EQ(role_from_string(to_string(r)), r);
  EXPECT_FALSE(role_from_string("wizard").has_value());
}

#include "connection_fixtures.hpp"

#include "dconn/fixtures.hpp"
#include "dconn/limits.hpp"
#include "dconn/mechanical.hpp"

namespace dconn::oracle {

std::vector<NamedConnection> connection_fixtures() {
  std::vector<NamedConnection> out;
  out.push_back({"trivial_so3", trivial_connection(Bundle(2, Group::so3()))});
  out.push_back({"trivial_se3", trivial_connection(Bundle(2, Group::se3()))});
  out.push_back({"euler_poincare_so3", euler_poincare_connection(Group::so3())});
  out.push_back({"euler_poincare_se3", euler_poincare_connection(Group::se3())});
  out.push_back({"exponentiated_so3", exact_discrete_connection(fixtures::so3_coupled())});
  out.push_back({"exponentiated_se3", exact_discrete_connection(fixtures::se3_coupled())});
  out.push_back({"mechanical_so3", discrete_mechanical_connection(fixtures::so3_toy())});
  out.push_back({"mechanical_se3", discrete_mechanical_connection(fixtures::se3_toy())});
  return out;
}

}  // namespace dconn::oracle

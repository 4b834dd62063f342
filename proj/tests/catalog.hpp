#pragma once

#include <string>
#include <vector>

// Shared group lists for the test suite. Everything here is expressible
// in the group-spec grammar (including explicit permutation models).
namespace catalog {

// SL(2,3) = Q8 : C3 acting on the 8 quaternion units by right
// multiplication plus the cycle i -> j -> k.
inline const char* kSL23 =
    "perm:[(1,2,3,4)(5,6,7,8);(1,5,3,7)(2,8,4,6);(2,5,8)(4,7,6)]";
inline const char* kS3 = "perm:[(1,2);(1,2,3)]";
inline const char* kS4 = "perm:[(1,2);(1,2,3,4)]";
inline const char* kA4 = "perm:[(1,2,3);(2,3,4)]";

inline std::vector<std::string> two_groups_16() {
  return {"C1",     "C2",     "C4",       "C8",     "C16",
          "C2xC2",  "C2xC4",  "C2xC8",    "C4xC4",  "C2xC2xC2",
          "C2xC2xC4", "C2xC2xC2xC2", "D8", "D16",   "SD16",
          "Q8",     "Q16",    "C2xD8",    "C2xQ8"};
}

inline std::vector<std::string> two_groups_32() {
  auto v = two_groups_16();
  for (const char* s :
       {"C32", "C2xC16", "C4xC8", "C2xC2xC8", "C2xC4xC4", "C2xC2xC2xC4",
        "D32", "SD32", "Q32", "C2xD16", "C2xQ16", "C2xSD16", "C4xQ8",
        "C4xD8", "C2xC2xQ8", "C2xC2xD8"})
    v.push_back(s);
  return v;
}

inline std::vector<std::string> two_groups_64() {
  auto v = two_groups_32();
  for (const char* s : {"C64", "D64", "SD64", "Q64", "C2xQ32", "C2xD32",
                        "C4xQ16", "C2xC4xQ8", "C8xC8"})
    v.push_back(s);
  return v;
}

inline std::vector<std::string> odd_groups() {
  return {"C3", "C5", "C7", "C9", "C27", "C3xC3", "C15", "C3xC9"};
}

inline std::vector<std::string> listed_products() {
  return {"C3xQ8", "C5xQ8", "C3xQ16", "C3xD16", "C3xSD16", "C5xC2xC2",
          "C3xC8", "C15xC2"};
}

// Everything of order <= 48 that the detection sweep runs on.
inline std::vector<std::string> test_groups_48() {
  std::vector<std::string> v;
  for (const auto& s : two_groups_32()) v.push_back(s);
  for (const char* s : {"C3", "C5", "C7", "C9", "C27", "C3xC3", "C15", "C6",
                        "C12", "C24", "D12", "C3xQ8", "C5xQ8", "C3xQ16",
                        "C3xD16", "C3xC8"})
    v.push_back(s);
  v.push_back(kS3);
  v.push_back(kA4);
  v.push_back(kS4);
  v.push_back(kSL23);
  return v;
}

}  // namespace catalog

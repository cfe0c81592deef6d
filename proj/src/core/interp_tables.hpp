#pragma once
// Raw coefficient tables for the block-interface interpolation operators.
// Layout: closures are flattened row-major (q rows x r cols) as string
// literals; interiors are a_0..a_{2s}.

namespace sbp::tables {

extern const char* const kp2_closure[];       // 1 x 3
extern const char* const kp2_interior[];      // a_0..a_2
extern const char* const kp4_closure[];       // 3 x 11
extern const char* const kp4_interior[];      // a_0..a_4
extern const char* const kp6_closure[];       // 3 x 17
extern const char* const kp6_interior[];      // a_0..a_6
extern const char* const kp4_to_2_closure[];  // 3 x 11
extern const char* const kp4_to_2_interior[]; // a_0..a_4
extern const char* const kp8_closure[];       // 4 x 23 (decimal strings)
extern const char* const kp8_interior[];      // a_0..a_8 (decimal strings)
extern const char* const kp8_to_4_closure[];  // 4 x 23 (decimal strings)
extern const char* const kp8_to_4_interior[]; // a_0..a_8 (decimal strings)

// non-SBP C2F upper closures, ragged rows (lens arrays give row lengths)
extern const char* const nonsbp_p4_c2f_closure[];
extern const int nonsbp_p4_c2f_lens[];
extern const char* const nonsbp_p6_c2f_closure[];
extern const int nonsbp_p6_c2f_lens[];

}  // namespace sbp::tables

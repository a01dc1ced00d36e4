// gen-directions: sample digit-masked directions to a JSON-lines file.
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"

#include "projlab/directions.hpp"
#include "projlab/harness.hpp"

using namespace projlab;

int main(int argc, char** argv) {
  CLI::App app{"sample digit-masked directions"};
  std::string kind = "d0", s_str = "1/2", eps_str = "1/16", seq_rule = "geo:4";
  std::string out_path, bits_file;
  u64 depth = 64, count = 1, seed = 1;
  int seq_len = 4;
  bool os_entropy = false;
  app.add_option("--kind", kind, "d0|ds|deps-s")->required();
  app.add_option("--s", s_str, "density for ds / deps-s (rational in (0,1))");
  app.add_option("--eps", eps_str, "eps for deps-s (rational in (0,1))");
  app.add_option("--seq", seq_rule, "paper|geo:<k>|square|list:<csv>");
  app.add_option("--seq-len", seq_len, "ladder length for rule-based sequences");
  app.add_option("--depth", depth, "angle precision R in bits");
  app.add_option("--count", count, "number of samples");
  app.add_option("--seed", seed, "PRNG seed");
  app.add_flag("--os-entropy", os_entropy, "derive the seed from the OS");
  app.add_option("--bits-file", bits_file,
                 "hex file: one line of raw angle bits per sample");
  app.add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
    MaskKind mk = kind == "d0"     ? MaskKind::D0
                  : kind == "ds"   ? MaskKind::Ds
                  : kind == "deps-s" ? MaskKind::DepsS
                                     : throw std::invalid_argument("unknown kind " + kind);
    ScaleSequence seq = parse_scale_rule(seq_rule, seq_len);
    MaskSpec spec = mask_intervals(mk, seq, depth, parse_rational(s_str),
                                   parse_rational(eps_str));
    if (os_entropy) {
      std::random_device rd;
      seed = ((u64)rd() << 32) ^ rd();
      std::cerr << "seed: " << seed << "\n";
    }

    std::string body;
    if (!bits_file.empty()) {
      std::ifstream bf(bits_file);
      if (!bf) throw std::runtime_error("cannot open " + bits_file);
      std::string line;
      u64 index = 0;
      while (std::getline(bf, line) && index < count) {
        BitVec raw = BitVec::from_hex(line, depth);
        DirectionSample d = bits_to_direction(mask_bits(raw, spec), depth);
        d.index = index++;
        d.provenance = spec;
        body += direction_record_json(d) + "\n";
      }
    } else {
      for (u64 i = 0; i < count; ++i)
        body += direction_record_json(sample_direction(spec, seed, i)) + "\n";
    }
    if (out_path.empty())
      std::cout << body;
    else
      write_file_atomic(out_path, body);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

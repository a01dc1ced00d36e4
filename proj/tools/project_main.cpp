// project: orthogonal projection of a planar point set onto a direction.
#include <iostream>

#include "CLI11.hpp"

#include "projlab/directions.hpp"
#include "projlab/fractal.hpp"

using namespace projlab;

int main(int argc, char** argv) {
  CLI::App app{"project a planar dyadic set onto a direction"};
  std::string in_path, out_path, e_str, from_direction;
  int r_out = -1;
  bool binary = false;
  app.add_option("--in", in_path, "input point set")->required();
  app.add_option("--e", e_str, "direction as ex,ey");
  app.add_option("--from-direction", from_direction,
                 "directions file and index as path:index");
  app.add_option("--rout", r_out, "output precision (default: input precision)");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_flag("--binary", binary, "binary output container");

  try {
    app.parse(argc, argv);
    DyadicPointSet set = read_point_set_file(in_path);
    double ex = 0, ey = 0;
    if (!e_str.empty()) {
      auto comma = e_str.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("--e expects ex,ey");
      ex = std::stod(e_str.substr(0, comma));
      ey = std::stod(e_str.substr(comma + 1));
    } else if (!from_direction.empty()) {
      auto colon = from_direction.rfind(':');
      if (colon == std::string::npos)
        throw std::invalid_argument("--from-direction expects path:index");
      DirectionSample d = read_direction_record(
          from_direction.substr(0, colon),
          std::stoull(from_direction.substr(colon + 1)));
      ex = d.ex;
      ey = d.ey;
    } else {
      throw std::invalid_argument("need --e or --from-direction");
    }
    if (r_out < 0) r_out = set.R;
    DyadicPointSet proj = project(set, ex, ey, r_out);
    if (out_path.empty())
      write_point_set(std::cout, proj, false);
    else
      write_point_set_file(out_path, proj, binary);
    return 0;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

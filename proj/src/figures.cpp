#include "tristeer/figures.hpp"

#include <numbers>

namespace tristeer {

namespace {

constexpr double pi = std::numbers::pi;

SystemParams<double> loop_base(double g_a, double g_b, double gamma_c, double lambda,
                               double phi) {
  SystemParams<double> p;
  p.kappa_a = p.kappa_b = 1.0;
  p.g_a = g_a;
  p.g_b = g_b;
  p.gamma_c = gamma_c;
  p.lambda = lambda;
  p.phi = phi;
  return p;
}

FigureResult run(std::string label, SweepSpec spec, int workers) {
  SweepResult result = run_sweep(spec, workers);
  return {std::move(label), std::move(spec), std::move(result)};
}

} // namespace

const std::vector<std::string>& known_figures() {
  static const std::vector<std::string> ids = {"2a", "2b", "3", "4",
                                               "5a", "5b", "6a", "6b", "7"};
  return ids;
}

std::vector<FigureResult> reproduce_figure(const std::string& id, int workers) {
  std::vector<FigureResult> out;

  if (id == "2a" || id == "2b") {
    // phase sweep of the a-b correlations; 2a: lambda = 0.4, 2b: lambda = 0.605
    const double lambda = id == "2a" ? 0.4 : 0.605;
    SweepSpec spec;
    spec.base = loop_base(3.2, 5.0, 2.0, lambda, 0.0);
    spec.axis1 = {ParamKey::phi, phase_grid()};
    spec.pairs = {ModePair::ab};
    out.push_back(run("fig" + id, std::move(spec), workers));
  } else if (id == "3") {
    // gamma_c sweep for four direct-path strengths, at both interference phases
    for (const auto& [phi, tag] : {std::pair{pi / 2, "0.5pi"}, {3 * pi / 2, "1.5pi"}}) {
      SweepSpec spec;
      spec.base = loop_base(8.3, 10.0, 2.0, 0.0, phi);
      spec.axis1 = {ParamKey::gamma_c, linspace(0.1, 20.0, 400)};
      spec.axis2 = Axis{ParamKey::lambda, {0.0, 0.5, 1.0, 1.5}};
      spec.pairs = {ModePair::ab};
      out.push_back(run(std::string("fig3_phi_") + tag, std::move(spec), workers));
    }
  } else if (id == "4") {
    // weakly damped intermediate mode: gamma_c well below kappa
    SweepSpec spec;
    spec.base = loop_base(8.3, 10.0, 1.0, 0.0, 3 * pi / 2);
    spec.axis1 = {ParamKey::gamma_c, linspace(0.01, 1.0, 400)};
    spec.axis2 = Axis{ParamKey::lambda, {0.0, 1.0}};
    spec.pairs = {ModePair::ab};
    out.push_back(run("fig4", std::move(spec), workers));
  } else if (id == "5a" || id == "5b") {
    // lambda sweep with and without the indirect path; the loop widens the
    // stable range well past the direct-path threshold lambda < kappa
    const double phi = id == "5a" ? pi / 2 : 3 * pi / 2;
    SweepSpec direct;
    direct.base = loop_base(0.0, 0.0, 5.0, 0.0, phi);
    direct.axis1 = {ParamKey::lambda, linspace(0.0, 2.6, 400)};
    direct.pairs = {ModePair::ab};
    out.push_back(run("fig" + id + "_direct", std::move(direct), workers));

    SweepSpec loop;
    loop.base = loop_base(8.3, 10.0, 5.0, 0.0, phi);
    loop.axis1 = {ParamKey::lambda, linspace(0.0, 2.6, 400)};
    loop.pairs = {ModePair::ab};
    out.push_back(run("fig" + id + "_loop", std::move(loop), workers));
  } else if (id == "6a" || id == "6b") {
    // thermal robustness; 6a heats only mode c, 6b heats all three modes
    SweepSpec spec;
    spec.base = loop_base(8.3, 10.0, 5.0, 0.0, 3 * pi / 2);
    spec.axis1 = id == "6a" ? Axis{ParamKey::nbar_c, linspace(0.0, 3.0, 400)}
                            : Axis{ParamKey::nbar_all, linspace(0.0, 2.0, 400)};
    spec.axis2 = Axis{ParamKey::lambda, {0.0, 1.5}};
    spec.pairs = {ModePair::ab};
    out.push_back(run("fig" + id, std::move(spec), workers));
  } else if (id == "7") {
    // competition between the a-b and a-c pairs over one phase period
    SweepSpec spec;
    spec.base = loop_base(3.2, 5.0, 15.0, 0.4, 0.0);
    spec.axis1 = {ParamKey::phi, phase_grid()};
    spec.pairs = {ModePair::ab, ModePair::ac};
    out.push_back(run("fig7", std::move(spec), workers));
  } else {
    throw contract_error("reproduce_figure: unknown figure id '" + id +
                         "' (known: 2a 2b 3 4 5a 5b 6a 6b 7)");
  }
  return out;
}

} // namespace tristeer

#include "conedn/conedn.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "config.hpp"
#include "conical_fn.hpp"
#include "errors.hpp"
#include "flat_dn.hpp"
#include "runner.hpp"
#include "shape_calc.hpp"
#include "strip_solver.hpp"
#include "taylor_cone.hpp"

struct cdn_grid {
  conedn::SigmaGrid g;
};
struct cdn_profile {
  conedn::ConeProfile p;
};
struct cdn_symbol_table {
  conedn::SymbolTable t;
};
struct cdn_field {
  conedn::StripField f;
};
struct cdn_config {
  conedn::RunConfig c;
};
struct cdn_report {
  conedn::Report r;
  std::string json;
};

namespace {

thread_local std::string g_last_error;

cdn_status status_of(conedn::ErrorKind k) {
  switch (k) {
    case conedn::ErrorKind::config: return CDN_ERR_CONFIG;
    case conedn::ErrorKind::domain: return CDN_ERR_DOMAIN;
    case conedn::ErrorKind::evaluation: return CDN_ERR_EVALUATION;
    case conedn::ErrorKind::solver: return CDN_ERR_SOLVER;
    case conedn::ErrorKind::io: return CDN_ERR_IO;
    case conedn::ErrorKind::internal: return CDN_ERR_INTERNAL;
  }
  return CDN_ERR_INTERNAL;
}

template <class F>
cdn_status guard(F&& f) {
  try {
    f();
    g_last_error.clear();
    return CDN_OK;
  } catch (const conedn::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return CDN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CDN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return CDN_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) throw conedn::ConfigError(std::string(what) + " is null");
}

conedn::RealVec copy_in(const double* p, int n) { return conedn::RealVec(p, p + n); }

void copy_out(const conedn::RealVec& v, double* out) {
  if (out) std::memcpy(out, v.data(), v.size() * sizeof(double));
}

}  // namespace

extern "C" {

const char* cdn_last_error(void) { return g_last_error.c_str(); }

const char* cdn_status_name(cdn_status s) {
  switch (s) {
    case CDN_OK: return "ok";
    case CDN_ERR_CONFIG: return "config error";
    case CDN_ERR_DOMAIN: return "domain error";
    case CDN_ERR_EVALUATION: return "evaluation error";
    case CDN_ERR_SOLVER: return "solver error";
    case CDN_ERR_IO: return "io error";
    case CDN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cdn_version(void) { return "0.1.0"; }

cdn_status cdn_grid_create(double L, int n, cdn_grid** out) {
  return guard([&] {
    need(out, "out");
    *out = new cdn_grid{conedn::SigmaGrid(L, n)};
  });
}

void cdn_grid_destroy(cdn_grid* g) { delete g; }

int cdn_grid_size(const cdn_grid* g) { return g ? g->g.size() : 0; }

cdn_status cdn_grid_nodes(const cdn_grid* g, double* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    copy_out(g->g.nodes(), out);
  });
}

cdn_status cdn_grid_frequencies(const cdn_grid* g, double* out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    copy_out(g->g.frequencies(), out);
  });
}

cdn_status cdn_taylor_angle(double tol, double* theta_out) {
  return guard([&] {
    need(theta_out, "theta_out");
    *theta_out = conedn::taylor_angle(tol).theta_star;
  });
}

cdn_status cdn_legendre_half(double theta, double* P, double* P1) {
  return guard([&] {
    const conedn::LegendreHalf lh = conedn::legendre_half(theta);
    if (P) *P = lh.P;
    if (P1) *P1 = lh.P1;
  });
}

cdn_status cdn_taylor_constant(double theta_star, double kappa, double epsilon, double* C_out) {
  return guard([&] {
    need(C_out, "C_out");
    *C_out = conedn::taylor_constant(conedn::ConeAngle(theta_star), kappa, epsilon);
  });
}

cdn_status cdn_conical(double zeta, double theta, int order, double* log_scale, double* d) {
  return guard([&] {
    need(d, "d");
    const conedn::ConicalJet j = conedn::conical_jet(zeta, theta, order);
    if (log_scale) *log_scale = j.log_scale;
    for (int m = 0; m <= order; ++m) d[m] = j.d[m];
  });
}

cdn_status cdn_flat_symbol(double zeta, double theta_star, double* g) {
  return guard([&] {
    need(g, "g");
    *g = conedn::flat_symbol(zeta, conedn::ConeAngle(theta_star).theta_star);
  });
}

cdn_status cdn_symbol_table_create(const cdn_grid* g, double theta_star, cdn_symbol_table** out) {
  return guard([&] {
    need(g, "grid");
    need(out, "out");
    *out = new cdn_symbol_table{conedn::build_symbol_table(g->g, conedn::ConeAngle(theta_star))};
  });
}

void cdn_symbol_table_destroy(cdn_symbol_table* t) { delete t; }

cdn_status cdn_symbol_values(const cdn_symbol_table* t, double* g_out) {
  return guard([&] {
    need(t, "table");
    need(g_out, "g_out");
    copy_out(t->t.g, g_out);
  });
}

cdn_status cdn_dn_flat(const cdn_symbol_table* t, const double* phi, double* out) {
  return guard([&] {
    need(t, "table");
    need(phi, "phi");
    need(out, "out");
    copy_out(conedn::dn_flat(copy_in(phi, t->t.grid.size()), t->t), out);
  });
}

cdn_status cdn_profile_create(const cdn_grid* g, double theta_star, const double* eta_tilde,
                              cdn_profile** out) {
  return guard([&] {
    need(g, "grid");
    need(eta_tilde, "eta_tilde");
    need(out, "out");
    *out = new cdn_profile{
        conedn::ConeProfile(conedn::ConeAngle(theta_star), g->g, copy_in(eta_tilde, g->g.size()))};
  });
}

void cdn_profile_destroy(cdn_profile* p) { delete p; }

cdn_status cdn_dn_general(const cdn_profile* p, int n_y, const double* phi, double* G, double* B,
                          double* V) {
  return guard([&] {
    need(p, "profile");
    need(phi, "phi");
    const auto& g = p->p.grid();
    const conedn::DNResult r =
        conedn::dn_general(p->p, copy_in(phi, g.size()), conedn::StripGrid(g, n_y));
    copy_out(r.g_of_phi, G);
    copy_out(r.B, B);
    copy_out(r.V, V);
  });
}

cdn_status cdn_solve_strip(const cdn_profile* p, int n_y, const double* phi, cdn_field** out) {
  return guard([&] {
    need(p, "profile");
    need(phi, "phi");
    need(out, "out");
    const auto& g = p->p.grid();
    *out = new cdn_field{
        conedn::solve_strip(p->p, copy_in(phi, g.size()), conedn::StripGrid(g, n_y))};
  });
}

cdn_status cdn_shape_derivative(const cdn_profile* p, int n_y, const double* phi, const double* h,
                                double* out) {
  return guard([&] {
    need(p, "profile");
    need(phi, "phi");
    need(h, "h");
    need(out, "out");
    const auto& g = p->p.grid();
    copy_out(conedn::shape_derivative(p->p, copy_in(phi, g.size()), copy_in(h, g.size()),
                                      conedn::StripGrid(g, n_y)),
             out);
  });
}

cdn_status cdn_stokes_term(const cdn_grid* g, double theta_star, const double* eta_tilde, int ell,
                           const double* phi, double* out) {
  return guard([&] {
    need(g, "grid");
    need(eta_tilde, "eta_tilde");
    need(phi, "phi");
    need(out, "out");
    if (ell < 0 || ell > 2) throw conedn::DomainError("ell must be 0, 1 or 2");
    const auto c = conedn::stokes_coefficients(conedn::ConeAngle(theta_star), g->g, ell);
    const int n = g->g.size();
    copy_out(conedn::stokes_g_ell(c, g->g, copy_in(eta_tilde, n), ell, copy_in(phi, n)), out);
  });
}

cdn_status cdn_mean_curvature(const cdn_profile* p, double* out) {
  return guard([&] {
    need(p, "profile");
    need(out, "out");
    copy_out(conedn::mean_curvature(conedn::SurfaceTheta(p->p)), out);
  });
}

void cdn_field_destroy(cdn_field* f) { delete f; }

cdn_status cdn_field_dims(const cdn_field* f, int* n_sigma, int* n_y) {
  return guard([&] {
    need(f, "field");
    if (n_sigma) *n_sigma = f->f.n_sigma();
    if (n_y) *n_y = f->f.n_y();
  });
}

cdn_status cdn_field_values(const cdn_field* f, double* out) {
  return guard([&] {
    need(f, "field");
    need(out, "out");
    copy_out(f->f.values(), out);
  });
}

cdn_status cdn_field_write_csv(const cdn_field* f, const char* path) {
  return guard([&] {
    need(f, "field");
    need(path, "path");
    f->f.write_csv(path);
  });
}

cdn_status cdn_field_write_binary(const cdn_field* f, const char* path) {
  return guard([&] {
    need(f, "field");
    need(path, "path");
    f->f.write_binary(path);
  });
}

cdn_status cdn_config_create(cdn_config** out) {
  return guard([&] {
    need(out, "out");
    *out = new cdn_config{};
  });
}

cdn_status cdn_config_load_file(const char* path, cdn_config** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new cdn_config{conedn::load_config_file(path)};
  });
}

cdn_status cdn_config_load_string(const char* yaml, cdn_config** out) {
  return guard([&] {
    need(yaml, "yaml");
    need(out, "out");
    *out = new cdn_config{conedn::load_config_string(yaml)};
  });
}

cdn_status cdn_config_set(cdn_config* c, const char* key, const char* value) {
  return guard([&] {
    need(c, "config");
    need(key, "key");
    need(value, "value");
    c->c.set(key, value);
  });
}

void cdn_config_destroy(cdn_config* c) { delete c; }

cdn_status cdn_config_hash(const cdn_config* c, char out[17]) {
  return guard([&] {
    need(c, "config");
    need(out, "out");
    const std::string h = c->c.hash();
    std::memcpy(out, h.c_str(), 17);
  });
}

const char* cdn_config_output_dir(const cdn_config* c) {
  return c ? c->c.output_dir.c_str() : "";
}

cdn_status cdn_run(const char* subcommand, const cdn_config* c, cdn_report** out) {
  return guard([&] {
    need(subcommand, "subcommand");
    need(c, "config");
    need(out, "out");
    auto* r = new cdn_report{conedn::run_subcommand(subcommand, c->c), {}};
    r->json = r->r.summary().dump(2);
    *out = r;
  });
}

void cdn_report_destroy(cdn_report* r) { delete r; }

int cdn_report_pass(const cdn_report* r) { return r && r->r.pass ? 1 : 0; }

const char* cdn_report_json(const cdn_report* r) { return r ? r->json.c_str() : ""; }

cdn_status cdn_report_write(const cdn_report* r, const char* dir) {
  return guard([&] {
    need(r, "report");
    need(dir, "dir");
    r->r.write(dir);
  });
}

}  // extern "C"

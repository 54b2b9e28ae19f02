#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>

// Every model constant in one place. Units: ms, mV, Hz; conductances in
// units of the leak conductance. Keys are the names accepted by the
// key=value config file, prefixed with the model name.
namespace lazyspike
{
// Conductance-based LIF network (Vogels & Abbott 2005 / Brette et al. 2007
// COBA benchmark).
struct vogels_params
{
	double dt_ms = 0.1;
	double connection_p = 0.02;
	double exc_fraction = 0.8;
	double tau_m_ms = 20.0;
	double v_rest_mV = -49.0;  // leak reversal above threshold keeps activity self-sustained
	double v_reset_mV = -60.0;
	double v_thresh_mV = -50.0;
	double refractory_ms = 5.0;
	double tau_exc_ms = 5.0;
	double tau_inh_ms = 10.0;
	double e_exc_mV = 0.0;
	double e_inh_mV = -80.0;
	double w_exc = 0.6;  // 6 nS / 10 nS
	double w_inh = 6.7;  // 67 nS / 10 nS
	double delay_ms = 0.1;
	// Initial conductances ~ N(mean, sd), clipped at 0.
	double init_ge_mean = 4.0;
	double init_ge_sd = 1.5;
	double init_gi_mean = 20.0;
	double init_gi_sd = 12.0;
	// Size the weights above were published for.
	double base_neurons = 4000.0;

	static constexpr std::string_view prefix = "vogels";
	static constexpr auto fields = std::to_array<std::pair<std::string_view, double vogels_params::*>>( {
	    { "dt_ms", &vogels_params::dt_ms },
	    { "connection_p", &vogels_params::connection_p },
	    { "exc_fraction", &vogels_params::exc_fraction },
	    { "tau_m_ms", &vogels_params::tau_m_ms },
	    { "v_rest_mV", &vogels_params::v_rest_mV },
	    { "v_reset_mV", &vogels_params::v_reset_mV },
	    { "v_thresh_mV", &vogels_params::v_thresh_mV },
	    { "refractory_ms", &vogels_params::refractory_ms },
	    { "tau_exc_ms", &vogels_params::tau_exc_ms },
	    { "tau_inh_ms", &vogels_params::tau_inh_ms },
	    { "e_exc_mV", &vogels_params::e_exc_mV },
	    { "e_inh_mV", &vogels_params::e_inh_mV },
	    { "w_exc", &vogels_params::w_exc },
	    { "w_inh", &vogels_params::w_inh },
	    { "delay_ms", &vogels_params::delay_ms },
	    { "init_ge_mean", &vogels_params::init_ge_mean },
	    { "init_ge_sd", &vogels_params::init_ge_sd },
	    { "init_gi_mean", &vogels_params::init_gi_mean },
	    { "init_gi_sd", &vogels_params::init_gi_sd },
	    { "base_neurons", &vogels_params::base_neurons },
	} );
};

// Current-based LIF with delta synapses (Brunel 2000, model A), driven by a
// population of Poisson neurons that is part of the network.
struct brunel_params
{
	double dt_ms = 0.1;
	double connection_p = 0.1;
	double drive_fraction = 0.5;
	double exc_fraction = 0.4;  // of all neurons; inhibitory gets the rest
	double tau_m_ms = 20.0;
	double v_thresh_mV = 20.0;
	double v_reset_mV = 0.0;
	double refractory_ms = 2.0;
	double delay_ms = 1.5;
	double j_mV = 0.1;       // excitatory PSP at base size
	double g = 5.0;          // relative inhibition
	double nu_ext_ratio = 2.0;  // drive rate over the threshold rate
	double base_neurons = 25000.0;  // 1000 excitatory inputs per neuron

	// STDP on drive -> excitatory synapses.
	double stdp_tau_plus_ms = 20.0;
	double stdp_tau_minus_ms = 20.0;
	double stdp_eta_minus = 0.01;  // relative to the initial weight
	double stdp_asymmetry = 1.05;  // eta_plus / eta_minus
	double stdp_w_max = 2.0;       // relative to the initial weight

	static constexpr std::string_view prefix = "brunel";
	static constexpr auto fields = std::to_array<std::pair<std::string_view, double brunel_params::*>>( {
	    { "dt_ms", &brunel_params::dt_ms },
	    { "connection_p", &brunel_params::connection_p },
	    { "drive_fraction", &brunel_params::drive_fraction },
	    { "exc_fraction", &brunel_params::exc_fraction },
	    { "tau_m_ms", &brunel_params::tau_m_ms },
	    { "v_thresh_mV", &brunel_params::v_thresh_mV },
	    { "v_reset_mV", &brunel_params::v_reset_mV },
	    { "refractory_ms", &brunel_params::refractory_ms },
	    { "delay_ms", &brunel_params::delay_ms },
	    { "j_mV", &brunel_params::j_mV },
	    { "g", &brunel_params::g },
	    { "nu_ext_ratio", &brunel_params::nu_ext_ratio },
	    { "base_neurons", &brunel_params::base_neurons },
	    { "stdp_tau_plus_ms", &brunel_params::stdp_tau_plus_ms },
	    { "stdp_tau_minus_ms", &brunel_params::stdp_tau_minus_ms },
	    { "stdp_eta_minus", &brunel_params::stdp_eta_minus },
	    { "stdp_asymmetry", &brunel_params::stdp_asymmetry },
	    { "stdp_w_max", &brunel_params::stdp_w_max },
	} );
};

// Exact-arithmetic verification model.
struct counting_params
{
	std::uint32_t num_neurons = 256;
	double connection_p = 0.1;
	int delay_steps = 3;
	double fire_probability = 0.02;  // per neuron and step, from the drive
	int max_gap = 48;                // forced spike after this many silent steps
	std::int64_t input_threshold = 40;
	std::int64_t pre_code = 1000;        // P
	std::int64_t post_code = 1000000;    // Q
};
} // namespace lazyspike

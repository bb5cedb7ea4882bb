from django.dispatch import Signal


#############################################################
###   Signals sent by the simulator
###
###   Sending is switched on by the SIGNALS option (or
###   SimOptions.signals).  Receivers must not modify the
###   objects they are handed.

#  Triggered for every recorded sample of a simulation.
#
#    record   :: the Record (t, state, energy, ellipticity_min, picard_iters)
#
plate_signal_record = Signal()

#  Triggered once when a simulation stops, whatever the reason.
#
#    reason   :: the HaltReason
#    t        :: the time at which the run stopped
#    result   :: the SimulationResult
#
plate_signal_halt = Signal()

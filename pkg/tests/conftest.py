import hypothesis
import twigcalc.constants as constants

hypothesis.settings.register_profile("twigcalc", max_examples=constants.PROPERTY_CASES, deadline=None,
                                     suppress_health_check=[hypothesis.HealthCheck.too_slow])
hypothesis.settings.load_profile("twigcalc")

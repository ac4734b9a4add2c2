from .TwigcalcLibrary import TwigcalcLibrary

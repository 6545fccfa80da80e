package settings;

class Settings {
    String theme = "dark";
    int fontSize;
    boolean sync;
}

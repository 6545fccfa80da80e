package settings;

import com.google.gson.Gson;

class Main {
    String export(Gson gson) {
        Settings settings = new Settings();
        return gson.toJson(settings);
    }
}
